#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "supertour/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = supertour::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fixture(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / ("supertour_cli_" + name);
  std::ofstream(path) << text;
  return path;
}

const fs::path& triangle() {
  static const fs::path path = fixture("triangle.txt", "0 1\n1 2\n2 0\n");
  return path;
}

}  // namespace

TEST_CASE("estimate on the triangle fixture") {
  const Result r = run({"estimate", "--graph", triangle().string(), "--seed-policy", "explicit:0",
                        "--m", "10000", "--master-seed", "5"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["m"] == 10000);
  CHECK(j["offset"] == 2.0);
  CHECK(j["m_prime"] == 100);
  const double mu = j["mu_hat"];
  // Batch spread gives the standard error of mu_hat.
  const double sigma = j["posterior"]["sigma_tilde"];
  CHECK(std::abs(mu - 3.0) <= 3.0 * sigma);
  CHECK(j["posterior"]["mu_tilde"] == j["mu_hat"]);
  CHECK(j["ci95"].size() == 2);
  CHECK(j["batches"].size() == 100);
  CHECK(j["crawl_cost"]["node_fraction"] == 1.0);
  CHECK(j["notices"].empty());
}

TEST_CASE("estimate with m = 1 omits the posterior with a notice") {
  const Result r = run({"estimate", "--graph", triangle().string(), "--seed-policy", "explicit:0",
                        "--m", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK_FALSE(j.contains("posterior"));
  CHECK(j["notices"].size() == 1);
}

TEST_CASE("identical configs give byte-identical reports") {
  const auto g = fixture("er.txt", run({"generate", "--model", "er:60:0.1", "--master-seed", "2"}).out);
  std::vector<std::string> base{"estimate", "--graph", g.string(), "--f", "degree_product",
                                "--seed-policy", "rw_topk:4:0.2", "--m", "400", "--density-grid",
                                "5", "--histogram"};
  const Result a = run(base);
  auto with_workers = base;
  with_workers.insert(with_workers.end(), {"--workers", "6"});
  const Result b = run(with_workers);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["density_grid"].size() == 5);
  CHECK(j.contains("histogram"));
}

TEST_CASE("tours emits JSON lines and a summary") {
  const Result r = run({"tours", "--graph", triangle().string(), "--seed-policy", "explicit:0",
                        "--m", "3", "--dump-nodes"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<Json> rows;
  while (std::getline(lines, line)) rows.push_back(Json::parse(line));
  REQUIRE(rows.size() == 4);
  for (int k = 0; k < 3; ++k) {
    CHECK(rows[k]["k"] == k + 1);
    CHECK(rows[k]["nodes"][0] == "S");
    CHECK(rows[k]["nodes"].size() == rows[k]["xi"]);
  }
  CHECK(rows[3].contains("crawl_cost"));
}

TEST_CASE("spectral, oracle, seeds and replicate subcommands") {
  const std::string g = triangle().string();
  const Json sp = Json::parse(run({"spectral", "--graph", g, "--seed-policy", "explicit:0"}).out);
  for (const char* key : {"delta", "lambda_2", "d_tot", "d_supernode", "upper_exact",
                          "upper_loose", "lower", "lower_raw", "sigma_a_sq", "e_xi", "e_xi_sq"}) {
    CHECK(sp.contains(key));
  }
  CHECK(sp["d_tot"] == 6.0);
  CHECK(sp["e_xi"] == doctest::Approx(3.0));

  const Json orc = Json::parse(run({"oracle", "--graph", g, "--f", "degree_product"}).out);
  CHECK(orc["mu_oracle"] == 12.0);

  const Json seeds = Json::parse(run({"seeds", "--graph", g, "--seed-policy", "uniform:2"}).out);
  CHECK(seeds["seeds"].size() == 2);

  const Result rep = run({"replicate", "--graph", g, "--seed-policy", "explicit:0", "--m", "4",
                          "--replications", "2"});
  REQUIRE(rep.code == 0);
  const Json jr = Json::parse(rep.out);
  CHECK(jr["replications"] == 2);
  CHECK(jr["mu_oracle"] == 3.0);
}

TEST_CASE("configmodel subcommand") {
  const auto g = fixture("cm.txt", run({"generate", "--model", "er:40:0.06", "--master-seed", "3"}).out);
  const Result r = run({"configmodel", "--graph", g.string(), "--seed-policy", "uniform:6",
                        "--m", "300", "--rewirings", "3"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["mu_c"] == doctest::Approx(j["total_edges"].get<double>()));
  CHECK(j["rewirings"].size() == 3);
  CHECK(j["total_edges_source"] == "exact");
}

TEST_CASE("errors map to exit codes with JSON on stderr") {
  const Result missing = run({"estimate", "--graph", "/no/such/file"});
  CHECK(missing.code == supertour::cli::kExitConfig);
  CHECK(Json::parse(missing.err)["error"]["kind"] == "config");
  CHECK(missing.out.empty());

  CHECK(run({"estimate"}).code == supertour::cli::kExitConfig);
  CHECK(run({"bogus"}).code == supertour::cli::kExitConfig);
  CHECK(run({"estimate", "--graph", triangle().string(), "--f", "nope"}).code ==
        supertour::cli::kExitConfig);
  CHECK(run({"estimate", "--graph", triangle().string(), "--seed-policy", "explicit:9"}).code ==
        supertour::cli::kExitConfig);

  const auto bad = fixture("bad.txt", "0 1\n1\n");
  const Result parse = run({"oracle", "--graph", bad.string()});
  CHECK(parse.code == supertour::cli::kExitConfig);
  CHECK(parse.err.find(":2") != std::string::npos);

  // A contracted graph above the spectral cap is rejected.
  const auto big = fixture("big.txt", run({"generate", "--model", "complete:60"}).out);
  const Result cap = run({"spectral", "--graph", big.string(), "--seed-policy", "explicit:0",
                          "--spectral-cap", "10"});
  CHECK(cap.code == supertour::cli::kExitConfig);

  CHECK(run({"--version"}).code == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("generate writes labels when asked") {
  const fs::path labels = fs::temp_directory_path() / "supertour_cli_labels.txt";
  const Result r = run({"generate", "--model", "planted:20:0.5:0.1", "--labels-out", labels.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(labels);
  std::string node, attribute, value;
  in >> node >> attribute >> value;
  CHECK(attribute == "group");
  CHECK((value == "a" || value == "b"));
}
