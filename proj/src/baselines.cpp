#include "supertour/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "supertour/errors.hpp"
#include "supertour/random.hpp"

namespace supertour {

double oracle_mu(const Graph& g, const EdgeFunction& f) {
  EdgeEvaluator eval(f, g);
  double sum = 0.0;
  for (const Edge& e : g.edges()) sum += eval(e.u, e.v);
  return sum;
}

ConfigModel generate_config_model(const std::vector<std::uint32_t>& degrees, std::uint64_t rng_seed,
                                  bool allow_defects) {
  std::vector<NodeId> stubs;
  for (NodeId v = 0; v < degrees.size(); ++v) stubs.insert(stubs.end(), degrees[v], v);
  if (stubs.size() % 2 != 0) throw ConfigError("degree sequence has an odd stub total");

  ConfigModel model;
  model.source_degrees = degrees;
  model.rng_seed = rng_seed;
  Rng rng(rng_seed);
  std::vector<Edge> edges(stubs.size() / 2);
  std::set<std::pair<NodeId, NodeId>> seen;

  while (true) {
    if (model.attempts == kConfigModelAttempts) {
      throw Error("no simple configuration-model graph after " +
                  std::to_string(kConfigModelAttempts) +
                  " matchings; rerun with defects allowed");
    }
    ++model.attempts;
    // Fisher-Yates on our own generator keeps matchings identical across
    // standard libraries.
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    bool simple = true;
    seen.clear();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = std::minmax(stubs[2 * i], stubs[2 * i + 1]);
      edges[i] = {a, b};
      if (!allow_defects && (a == b || !seen.emplace(a, b).second)) {
        simple = false;
        break;
      }
    }
    if (simple) break;
  }
  model.graph = Graph(degrees.size(), std::move(edges), allow_defects);
  return model;
}

void copy_node_data(const Graph& source, Graph& target) {
  if (source.node_count() != target.node_count()) {
    throw ConfigError("cannot copy node data between graphs of different size");
  }
  std::vector<std::string> tokens(source.node_count());
  for (NodeId v = 0; v < source.node_count(); ++v) tokens[v] = source.token(v);
  target.set_tokens(std::move(tokens));
  const auto& labels = source.labels();
  for (NodeId v = 0; v < labels.size(); ++v) {
    for (const auto& [attribute, value] : labels[v]) target.set_label(v, attribute, value);
  }
}

Graph crawl_subgraph(const SuperNodeGraph& sg, const TourSet& ts) {
  const Graph& g = sg.base();
  std::vector<bool> keep(ts.edge_seen);
  keep.resize(g.edge_count(), false);
  for (EdgeId id : sg.boundary_edges()) keep[id] = true;
  std::vector<Edge> edges;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (keep[id]) edges.push_back(g.edge(id));
  }
  Graph sub(g.node_count(), std::move(edges), true);
  copy_node_data(g, sub);
  return sub;
}

double config_model_estimate(const Graph& rewired, const EdgeFunction& f, double total_edges) {
  if (rewired.edge_count() == 0) throw ConfigError("configuration-model subgraph has no edges");
  return oracle_mu(rewired, f) * total_edges / static_cast<double>(rewired.edge_count());
}

}  // namespace supertour
