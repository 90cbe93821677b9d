#include "supertour/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "supertour/baselines.hpp"
#include "supertour/errors.hpp"
#include "supertour/estimator.hpp"
#include "supertour/graph.hpp"
#include "supertour/random.hpp"
#include "supertour/replicate.hpp"
#include "supertour/seeds.hpp"
#include "supertour/spectral.hpp"
#include "supertour/supernode.hpp"
#include "supertour/synthetic.hpp"
#include "supertour/tours.hpp"

namespace supertour::cli {

namespace {

using Json = nlohmann::ordered_json;

// Everything that determines a report. Worker count and output path are
// deliberately absent: they never change the numbers.
struct RunConfig {
  std::string graph_path;
  std::string labels_path;
  std::string function = "constant_one";
  std::string seed_policy = "uniform:10";
  std::size_t m = 1000;
  std::uint64_t master_seed = 1;
  PriorParams prior;
  bool exclude_offset = false;
  std::size_t density_grid = 0;
  bool histogram = false;
  bool dump_nodes = false;
  bool allow_self_loops = false;

  std::size_t workers = 1;
  std::string out_path;
};

Json config_json(const RunConfig& c, const std::string& command) {
  Json j;
  j["command"] = command;
  j["graph"] = c.graph_path;
  j["labels"] = c.labels_path.empty() ? Json(nullptr) : Json(c.labels_path);
  j["function"] = c.function;
  j["seed_policy"] = c.seed_policy;
  j["m"] = c.m;
  j["master_seed"] = c.master_seed;
  j["prior"] = {{"m0", c.prior.m0}, {"nu0", c.prior.nu0}, {"mu0", c.prior.mu0},
                {"sigma0", c.prior.sigma0}};
  j["exclude_offset"] = c.exclude_offset;
  j["density_grid"] = c.density_grid;
  j["histogram"] = c.histogram;
  j["dump_nodes"] = c.dump_nodes;
  j["allow_self_loops"] = c.allow_self_loops;
  return j;
}

Json envelope(const RunConfig& c, const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["tool"] = "supertour";
  j["version"] = kVersion;
  j["config"] = config_json(c, command);
  return j;
}

Json crawl_cost_json(const CrawlCost& cost, const Graph& g) {
  return {{"distinct_nodes", cost.distinct_nodes},
          {"distinct_edges", cost.distinct_edges},
          {"total_steps", cost.total_steps},
          {"node_fraction", cost.node_fraction(g.node_count())},
          {"edge_fraction", cost.edge_fraction(g.edge_count())}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("invalid " + what + " '" + text + "'");
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("invalid " + what + " '" + text + "'");
  return value;
}

constexpr std::uint64_t kSeedStream = 0x5365656453656c65ULL;

SeedSet resolve_seeds(const Graph& g, const std::string& policy, std::uint64_t master_seed) {
  const auto colon = policy.find(':');
  const std::string kind = policy.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : policy.substr(colon + 1);
  const std::uint64_t rng_seed = substream_seed(master_seed, kSeedStream);
  if (kind == "uniform") {
    return select_seeds_uniform(g, parse_count(rest, "seed count"), rng_seed);
  }
  if (kind == "rw_topk") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw ConfigError("rw_topk policy needs k:budget_fraction");
    return select_seeds_rw_topk(g, parse_count(parts[0], "seed count"),
                                parse_real(parts[1], "budget fraction"), rng_seed);
  }
  if (kind == "explicit") {
    return select_seeds_explicit(g, split(rest, ','));
  }
  throw ConfigError("unknown seed policy '" + policy +
                    "' (expected uniform:k, rw_topk:k:budget or explicit:a,b,...)");
}

// Loaded inputs shared by the graph-based subcommands.
struct Inputs {
  Graph graph;
  EdgeFunction function;
  std::unique_ptr<SuperNodeGraph> sg;
};

Inputs load_inputs(const RunConfig& c, bool need_seeds = true) {
  if (c.graph_path.empty()) throw ConfigError("--graph is required");
  Inputs in;
  std::optional<std::filesystem::path> labels;
  if (!c.labels_path.empty()) labels = c.labels_path;
  in.graph = load_graph(c.graph_path, labels, LoadOptions{c.allow_self_loops});
  in.function = EdgeFunction::parse(c.function);
  if (need_seeds) {
    in.sg = std::make_unique<SuperNodeGraph>(in.graph,
                                             resolve_seeds(in.graph, c.seed_policy, c.master_seed));
  }
  return in;
}

Json posterior_json(const Posterior& p) {
  return {{"nu", p.nu},
          {"mu_tilde", p.mu_tilde},
          {"sigma_tilde", p.sigma_tilde},
          {"degenerate", p.degenerate}};
}

Json cmd_estimate(const RunConfig& c) {
  c.prior.validate();
  Inputs in = load_inputs(c);
  const TourSet ts = run_tours(*in.sg, in.function, c.m, c.master_seed, c.workers);
  const EstimateReport r = make_report(ts, *in.sg, in.function, c.prior, !c.exclude_offset);

  Json j = envelope(c, "estimate");
  Json notices = Json::array();
  j["function"] = in.function.spec();
  j["mu_hat"] = r.mu_hat;
  j["offset"] = r.offset;
  j["crawl_term"] = r.crawl_term;
  j["target"] = c.exclude_offset ? "edges_not_touching_seeds" : "all_edges";
  j["m"] = r.m;
  j["m_prime"] = r.m_prime;
  j["seeds"] = in.sg->seeds().size();
  j["supernode_degree"] = in.sg->supernode_degree();
  if (r.posterior) {
    j["posterior"] = posterior_json(*r.posterior);
    j["map_estimate"] = r.map_estimate;
    const auto [lo, hi] = credible_interval(*r.posterior, 0.95);
    j["ci95"] = {lo, hi};
    if (r.posterior->degenerate) {
      notices.push_back("zero batch spread: posterior is a point mass at mu_tilde");
    }
  } else {
    notices.push_back("posterior omitted: it needs m >= 2 tours");
  }
  j["batches"] = r.batch_values;
  j["crawl_cost"] = crawl_cost_json(r.crawl_cost, in.graph);
  if (in.function.kind == EdgeFunction::Kind::clustering_local) {
    // Mean local clustering needs |V|; the exact node count is used.
    const auto n = static_cast<double>(in.graph.node_count());
    j["per_node"] = {{"node_count", in.graph.node_count()}, {"mu_hat", r.mu_hat / n}};
  }
  if (c.density_grid > 0 && r.posterior && !r.posterior->degenerate) {
    Json grid = Json::array();
    const Posterior& p = *r.posterior;
    const double lo = p.mu_tilde - 6.0 * p.sigma_tilde;
    const double step = c.density_grid > 1 ? 12.0 * p.sigma_tilde / (c.density_grid - 1) : 0.0;
    for (std::size_t i = 0; i < c.density_grid; ++i) {
      const double x = c.density_grid > 1 ? lo + step * i : p.mu_tilde;
      grid.push_back({x, posterior_density(p, x)});
    }
    j["density_grid"] = grid;
  }
  if (c.histogram && r.batch_values.size() >= 2) {
    const Histogram h = empirical_posterior(r.batch_values);
    Json bins = Json::array();
    for (const auto& b : h.bins) bins.push_back({b.center, b.density});
    j["histogram"] = {{"bin_width", h.bin_width}, {"bins", bins}};
  }
  j["notices"] = notices;
  return j;
}

void cmd_tours(const RunConfig& c, std::ostream& out) {
  Inputs in = load_inputs(c);
  TourOptions options;
  options.record_nodes = c.dump_nodes;
  const TourSet ts = run_tours(*in.sg, in.function, c.m, c.master_seed, c.workers, options);
  for (std::size_t k = 0; k < ts.m(); ++k) {
    const Tour& t = ts.tours[k];
    Json line = {{"k", k + 1}, {"xi", t.xi}, {"w", t.w}};
    if (c.dump_nodes) {
      Json nodes = Json::array();
      for (NodeId v : t.nodes) {
        nodes.push_back(v == SuperNodeGraph::kSuperNode ? std::string("S")
                                                        : in.graph.token(in.sg->original(v)));
      }
      line["nodes"] = nodes;
    }
    out << line.dump() << '\n';
  }
  Json summary = envelope(c, "tours");
  summary["crawl_cost"] = crawl_cost_json(ts.crawl_cost, in.graph);
  out << summary.dump() << '\n';
}

Json cmd_spectral(const RunConfig& c, std::optional<double> bound, std::size_t cap) {
  Inputs in = load_inputs(c);
  const SpectralProfile sp = decompose(*in.sg, cap);
  const ReturnTimeMoments rt = return_time_moments(sp);
  const VarianceBounds vb = variance_bounds(sp, *in.sg, in.function, bound);
  Json j = envelope(c, "spectral");
  j["function"] = in.function.spec();
  j["delta"] = sp.delta;
  j["lambda_2"] = sp.lambda2();
  j["d_tot"] = sp.d_tot;
  j["d_supernode"] = sp.d_supernode;
  j["bound"] = vb.bound;
  j["bound_kind"] = vb.bound_empirical ? "empirical" : "given";
  j["upper_exact"] = vb.upper_exact;
  j["upper_loose"] = vb.upper_loose;
  j["lower"] = vb.lower;
  j["lower_raw"] = vb.lower_raw;
  j["sigma_a_sq"] = vb.sigma_a_sq;
  j["e_w"] = vb.mean_w;
  j["e_xi"] = rt.mean;
  j["e_xi_sq"] = rt.second_moment;
  j["var_xi"] = rt.variance;
  j["var_xi_bound"] = rt.variance_bound;
  return j;
}

Json cmd_oracle(const RunConfig& c) {
  Inputs in = load_inputs(c, false);
  Json j = envelope(c, "oracle");
  j["function"] = in.function.spec();
  const double mu = oracle_mu(in.graph, in.function);
  j["mu_oracle"] = mu;
  j["node_count"] = in.graph.node_count();
  j["edge_count"] = in.graph.edge_count();
  if (in.function.kind == EdgeFunction::Kind::clustering_local) {
    j["per_node"] = mu / static_cast<double>(in.graph.node_count());
  }
  return j;
}

Json cmd_configmodel(const RunConfig& c, std::size_t rewirings, bool estimate_edges,
                     bool allow_defects) {
  if (rewirings < 1) throw ConfigError("--rewirings must be >= 1");
  Inputs in = load_inputs(c);
  const TourSet ts = run_tours(*in.sg, in.function, c.m, c.master_seed, c.workers);
  const double mu_hat = point_estimate(ts, *in.sg, in.function);

  double total_edges = static_cast<double>(in.graph.edge_count());
  if (estimate_edges) {
    const EdgeFunction one = EdgeFunction::parse("constant_one");
    const TourSet count_ts = run_tours(*in.sg, one, c.m, c.master_seed, c.workers);
    total_edges = point_estimate(count_ts, *in.sg, one);
  }

  const Graph crawl = crawl_subgraph(*in.sg, ts);
  std::vector<std::uint32_t> crawl_degrees(crawl.degrees().begin(), crawl.degrees().end());
  std::vector<std::uint32_t> full_degrees(in.graph.degrees().begin(), in.graph.degrees().end());

  Json runs = Json::array();
  double sum_c = 0.0;
  double sum_full = 0.0;
  for (std::size_t r = 0; r < rewirings; ++r) {
    const std::uint64_t seed = substream_seed(c.master_seed ^ 0x436f6e666967ULL, r);
    ConfigModel crawl_model = generate_config_model(crawl_degrees, seed, allow_defects);
    copy_node_data(in.graph, crawl_model.graph);
    const double mu_c = config_model_estimate(crawl_model.graph, in.function, total_edges);

    ConfigModel full_model = generate_config_model(full_degrees, mix64(seed), allow_defects);
    copy_node_data(in.graph, full_model.graph);
    const double mu_full = oracle_mu(full_model.graph, in.function);
    sum_c += mu_c;
    sum_full += mu_full;
    runs.push_back({{"mu_c", mu_c}, {"mu_config_full", mu_full}});
  }
  const auto R = static_cast<double>(rewirings);

  Json j = envelope(c, "configmodel");
  j["function"] = in.function.spec();
  j["mu_c"] = sum_c / R;
  j["e_c"] = crawl.edge_count();
  j["total_edges"] = total_edges;
  j["total_edges_source"] = estimate_edges ? "tour_estimate" : "exact";
  j["mu_config_full"] = sum_full / R;
  j["mu_hat_original"] = mu_hat;
  if (sum_c != 0.0) j["ratio_vs_original"] = mu_hat / (sum_c / R);
  j["rewirings"] = runs;
  j["crawl_cost"] = crawl_cost_json(ts.crawl_cost, in.graph);
  return j;
}

Json cmd_replicate(const RunConfig& c, std::size_t replications, double level) {
  Inputs in = load_inputs(c);
  ReplicationOptions options;
  options.m = c.m;
  options.replications = replications;
  options.master_seed = c.master_seed;
  options.workers = c.workers;
  options.level = level;
  options.prior = c.prior;
  const ReplicationSummary s = replicate(*in.sg, in.function, options);
  Json j = envelope(c, "replicate");
  j["function"] = in.function.spec();
  j["replications"] = s.replications;
  j["mu_oracle"] = s.mu_oracle;
  j["mean_mu_hat"] = s.mean_mu_hat;
  j["stderr"] = s.stderr_mu_hat;
  j["bias"] = s.bias();
  j["z_score"] = s.stderr_mu_hat > 0.0 ? s.bias() / s.stderr_mu_hat : 0.0;
  j["level"] = level;
  j["coverage"] = s.coverage ? Json(*s.coverage) : Json(nullptr);
  return j;
}

Json cmd_seeds(const RunConfig& c) {
  Inputs in = load_inputs(c);
  Json j = envelope(c, "seeds");
  Json seeds = Json::array();
  for (NodeId s : in.sg->seeds().members()) seeds.push_back(in.graph.token(s));
  j["seeds"] = seeds;
  j["supernode_degree"] = in.sg->supernode_degree();
  j["boundary_edges"] = in.sg->boundary_edges().size();
  j["contracted_nodes"] = in.sg->node_count();
  return j;
}

Graph generate_graph(const std::string& model, std::uint64_t seed) {
  const auto parts = split(model, ':');
  const std::string& kind = parts.empty() ? model : parts[0];
  auto arg = [&](std::size_t i, const char* what) {
    if (i >= parts.size()) throw ConfigError("model '" + kind + "' is missing " + what);
    return parts[i];
  };
  auto count = [&](std::size_t i) {
    return static_cast<std::uint32_t>(parse_count(arg(i, "a node count"), "node count"));
  };
  if (kind == "er") return synthetic::erdos_renyi(count(1), parse_real(arg(2, "p"), "p"), seed);
  if (kind == "complete") return synthetic::complete(count(1));
  if (kind == "path") return synthetic::path(count(1));
  if (kind == "cycle") return synthetic::cycle(count(1));
  if (kind == "star") return synthetic::star(count(1));
  if (kind == "dumbbell") return synthetic::dumbbell(count(1));
  if (kind == "powerlaw") {
    return synthetic::powerlaw_cluster(count(1), count(2), parse_real(arg(3, "p"), "p"), seed);
  }
  if (kind == "planted") {
    return synthetic::planted_partition(count(1), parse_real(arg(2, "p_in"), "p_in"),
                                        parse_real(arg(3, "p_out"), "p_out"), "group", seed);
  }
  throw ConfigError("unknown graph model '" + model + "'");
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw ConfigError("cannot open output file " + path);
  return file;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--graph", c.graph_path, "Edge-list file")->required();
  sub->add_option("--labels", c.labels_path, "Label file (node attribute value)");
  sub->add_option("--f", c.function, "Edge function, e.g. degree_sum_threshold:50");
  sub->add_option("--seed-policy", c.seed_policy,
                  "uniform:k | rw_topk:k:budget_fraction | explicit:a,b,...");
  sub->add_option("--m", c.m, "Number of tours");
  sub->add_option("--master-seed", c.master_seed, "Seed for all randomness");
  sub->add_option("--workers", c.workers, "Worker threads (results do not depend on it)");
  sub->add_option("--out", c.out_path, "Output file (default: standard output)");
  sub->add_flag("--allow-self-loops", c.allow_self_loops, "Accept self-loops in the edge list");
}

void add_prior(CLI::App* sub, RunConfig& c) {
  sub->add_option("--m0", c.prior.m0, "Prior pseudo-count");
  sub->add_option("--nu0", c.prior.nu0, "Prior degrees-of-freedom pseudo-count");
  sub->add_option("--mu0", c.prior.mu0, "Prior mean");
  sub->add_option("--sigma0", c.prior.sigma0, "Prior scale");
}

int report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unbiased edge-sum estimation from super-node random-walk tours", "supertour"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig c;
  std::optional<double> bound;
  std::size_t spectral_cap = kDefaultSpectralCap;
  std::size_t rewirings = 1;
  bool estimate_edges = false;
  bool allow_defects = false;
  std::size_t replications = 100;
  double level = 0.95;
  std::string model;
  std::string labels_out;
  std::string binary_attribute;

  auto* estimate = app.add_subcommand("estimate", "Point estimate, batches and t-posterior");
  add_common(estimate, c);
  add_prior(estimate, c);
  estimate->add_flag("--exclude-offset", c.exclude_offset,
                     "Target only edges not touching the seeds in batches and posterior");
  estimate->add_option("--density-grid", c.density_grid,
                       "Emit k (x, density) samples over mu_tilde +/- 6 sigma_tilde");
  estimate->add_flag("--histogram", c.histogram, "Emit the empirical batch histogram");

  auto* tours = app.add_subcommand("tours", "Dump tours as JSON lines");
  add_common(tours, c);
  tours->add_flag("--dump-nodes", c.dump_nodes, "Include node sequences");

  auto* spectral = app.add_subcommand("spectral", "Exact spectral variance quantities");
  add_common(spectral, c);
  spectral->add_option("--bound", bound, "Bound B >= max f (default: hint or empirical max)");
  spectral->add_option("--spectral-cap", spectral_cap, "Largest contracted graph to decompose");

  auto* oracle = app.add_subcommand("oracle", "Exact value by full enumeration");
  add_common(oracle, c);

  auto* configmodel = app.add_subcommand("configmodel", "Configuration-model baseline");
  add_common(configmodel, c);
  configmodel->add_option("--rewirings", rewirings, "Number of configuration models to draw");
  configmodel->add_flag("--estimate-edges", estimate_edges,
                        "Estimate |E| from constant_one tours instead of using the exact count");
  configmodel->add_flag("--allow-defects", allow_defects,
                        "Keep self-loops and multi-edges of the stub matching");

  auto* rep = app.add_subcommand("replicate", "Bias and coverage over independent replications");
  add_common(rep, c);
  add_prior(rep, c);
  rep->add_option("--replications", replications, "Number of replications");
  rep->add_option("--level", level, "Credible level for coverage");

  auto* seeds = app.add_subcommand("seeds", "Show the selected seed set");
  add_common(seeds, c);

  auto* generate = app.add_subcommand("generate", "Write a synthetic graph");
  generate->add_option("--model", model,
                       "er:n:p | complete:n | path:n | cycle:n | star:n | dumbbell:n | "
                       "powerlaw:n:m:p | planted:n:p_in:p_out")
      ->required();
  generate->add_option("--master-seed", c.master_seed, "Generator seed");
  generate->add_option("--out", c.out_path, "Edge-list output (default: standard output)");
  generate->add_option("--labels-out", labels_out, "Label file output");
  generate->add_option("--binary-labels", binary_attribute,
                       "Attach a uniformly random 0/1 attribute with this name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "config", e.what(), kExitConfig);
  }

  try {
    std::ofstream file;
    std::ostream& dest = open_output(c.out_path, file, out);
    if (*estimate) {
      dest << cmd_estimate(c).dump(2) << '\n';
    } else if (*tours) {
      cmd_tours(c, dest);
    } else if (*spectral) {
      dest << cmd_spectral(c, bound, spectral_cap).dump(2) << '\n';
    } else if (*oracle) {
      dest << cmd_oracle(c).dump(2) << '\n';
    } else if (*configmodel) {
      dest << cmd_configmodel(c, rewirings, estimate_edges, allow_defects).dump(2) << '\n';
    } else if (*rep) {
      dest << cmd_replicate(c, replications, level).dump(2) << '\n';
    } else if (*seeds) {
      dest << cmd_seeds(c).dump(2) << '\n';
    } else if (*generate) {
      Graph g = generate_graph(model, c.master_seed);
      if (!binary_attribute.empty()) synthetic::assign_binary_labels(g, binary_attribute, c.master_seed);
      write_edge_list(g, dest);
      if (!labels_out.empty()) {
        std::ofstream lf(labels_out);
        if (!lf) throw ConfigError("cannot open label output " + labels_out);
        write_labels(g, lf);
      }
    }
  } catch (const ConfigError& e) {
    return report_error(err, "config", e.what(), kExitConfig);
  } catch (const std::exception& e) {
    return report_error(err, "runtime", e.what(), kExitRuntime);
  }
  return kExitOk;
}

}  // namespace supertour::cli
