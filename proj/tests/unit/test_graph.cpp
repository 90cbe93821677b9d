#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "supertour/errors.hpp"
#include "supertour/graph.hpp"
#include "supertour/synthetic.hpp"

using namespace supertour;

namespace {

Graph parse(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return read_edge_list(in, "test", options);
}

}  // namespace

TEST_CASE("edge list with a duplicate line keeps the parallel edge") {
  const Graph g = parse("0 1\n1 2\n0 1\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(1) == 3);
  CHECK(g.neighbors(1).size() == 3);
}

TEST_CASE("empty input gives the empty graph") {
  const Graph g = parse("# nothing here\n\n");
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
  CHECK(g.component_count() == 0);
}

TEST_CASE("tokens are renumbered by first appearance") {
  const Graph g = parse("# comment\nalice bob\n\ncarol alice\n");
  REQUIRE(g.node_count() == 3);
  CHECK(g.token(0) == "alice");
  CHECK(g.token(1) == "bob");
  CHECK(g.token(2) == "carol");
  CHECK(g.find_token("carol") == NodeId{2});
  CHECK_FALSE(g.find_token("dave").has_value());
  // Edges are canonical with u <= v.
  CHECK(g.edge(1).u == 0);
  CHECK(g.edge(1).v == 2);
}

TEST_CASE("malformed lines report the line number") {
  try {
    parse("0 1\n1 2 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0\n"), ParseError);
}

TEST_CASE("self-loops need the flag") {
  CHECK_THROWS_AS(parse("0 1\n1 1\n"), ParseError);
  const Graph g = parse("0 1\n1 1\n", LoadOptions{true});
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 3);
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), ConfigError);
}

TEST_CASE("degree sum is twice the edge count") {
  const Graph g = synthetic::erdos_renyi(60, 0.1, 7);
  std::uint64_t total = 0;
  for (auto d : g.degrees()) total += d;
  CHECK(total == 2 * g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    CHECK(g.neighbors(v).size() == g.degree(v));
    CHECK(g.incident_edges(v).size() == g.degree(v));
  }
}

TEST_CASE("adjacency queries and components") {
  const Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.component_count() == 2);
  CHECK(g.component_of()[2] == 0);
  CHECK(g.component_of()[4] == 1);
}

TEST_CASE("labels load from triples and unknown nodes are rejected") {
  Graph g = parse("a b\nb c\n");
  std::istringstream labels("a breed lab\nb breed pug\n# skip\nc breed lab\n");
  read_labels(labels, g, "labels");
  CHECK(g.label(0, "breed") == std::string_view("lab"));
  CHECK(g.label(1, "breed") == std::string_view("pug"));
  CHECK_FALSE(g.label(1, "colour").has_value());

  std::istringstream bad("zz breed lab\n");
  CHECK_THROWS_AS(read_labels(bad, g, "labels"), ParseError);
  std::istringstream short_line("a breed\n");
  CHECK_THROWS_AS(read_labels(short_line, g, "labels"), ParseError);
}

TEST_CASE("write and reload round trip") {
  Graph g = synthetic::planted_partition(20, 0.4, 0.1, "group", 3);
  std::ostringstream edges;
  std::ostringstream labels;
  write_edge_list(g, edges);
  write_labels(g, labels);

  std::istringstream ein(edges.str());
  Graph back = read_edge_list(ein);
  std::istringstream lin(labels.str());
  read_labels(lin, back);
  REQUIRE(back.edge_count() == g.edge_count());
  // Isolated nodes are not in the edge list, so compare through tokens.
  for (const auto& e : g.edges()) {
    const auto u = back.find_token(g.token(e.u));
    const auto v = back.find_token(g.token(e.v));
    REQUIRE(u);
    REQUIRE(v);
    CHECK(back.adjacent(*u, *v));
    CHECK(back.label(*u, "group") == g.label(e.u, "group"));
  }
}

TEST_CASE("load_graph reads files and reports missing ones") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "supertour_graph_test.txt";
  const auto lpath = dir / "supertour_label_test.txt";
  std::ofstream(path) << "0 1\n1 2\n2 0\n";
  std::ofstream(lpath) << "0 colour red\n1 colour red\n2 colour blue\n";
  const Graph g = load_graph(path, lpath);
  CHECK(g.edge_count() == 3);
  CHECK(g.label(2, "colour") == std::string_view("blue"));
  CHECK_THROWS_AS(load_graph(dir / "supertour_no_such_file.txt"), ConfigError);
  std::filesystem::remove(path);
  std::filesystem::remove(lpath);
}

TEST_CASE("loading the same file twice is deterministic") {
  const std::string text = "x y\ny z\nz w\nw x\nx z\n";
  const Graph a = parse(text);
  const Graph b = parse(text);
  REQUIRE(a.edge_count() == b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) CHECK(a.edge(e) == b.edge(e));
}
