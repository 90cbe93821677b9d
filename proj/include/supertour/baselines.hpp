#pragma once

#include <cstdint>
#include <vector>

#include "supertour/edge_function.hpp"
#include "supertour/graph.hpp"
#include "supertour/supernode.hpp"
#include "supertour/tours.hpp"

namespace supertour {

/// Exact sum of f over every edge of g.
double oracle_mu(const Graph& g, const EdgeFunction& f);

/// Degree-preserving random graph from uniformly paired edge stubs.
struct ConfigModel {
  std::vector<std::uint32_t> source_degrees;
  Graph graph;
  std::uint64_t rng_seed = 0;
  std::size_t attempts = 0;  // matchings drawn before acceptance

  std::size_t edge_count() const noexcept { return graph.edge_count(); }
};

inline constexpr std::size_t kConfigModelAttempts = 10'000;

/// Pairs the stubs by a uniform perfect matching. With `allow_defects` false
/// the whole matching is redrawn until it has no self-loop or parallel edge
/// (at most kConfigModelAttempts draws); with true it is returned as drawn.
ConfigModel generate_config_model(const std::vector<std::uint32_t>& degrees, std::uint64_t rng_seed,
                                  bool allow_defects = false);

/// Copies node tokens and labels from `source` onto `target` (same node count).
void copy_node_data(const Graph& source, Graph& target);

/// Graph on the nodes of sg.base() holding the original edges seen by the
/// tours plus every boundary edge. Tokens and labels are kept.
Graph crawl_subgraph(const SuperNodeGraph& sg, const TourSet& ts);

/// mu_C = sum_{(u,v) in E_c} f(u, v) * total_edges / |E_c|, f evaluated on
/// `rewired`. Throws ConfigError when E_c is empty.
double config_model_estimate(const Graph& rewired, const EdgeFunction& f, double total_edges);

}  // namespace supertour
