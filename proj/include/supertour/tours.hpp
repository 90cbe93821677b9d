#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "supertour/edge_function.hpp"
#include "supertour/random.hpp"
#include "supertour/supernode.hpp"

namespace supertour {

/// One excursion of the walk from the super-node back to it.
///
/// xi counts steps up to and including the step that re-enters the
/// super-node, so E[xi] = d_tot / d_S. The recorded node sequence is
/// (S, X_2, ..., X_xi) in G' ids and has exactly xi entries; the return to S
/// is implicit. w sums f over the tour's transitions, with f taken as zero on
/// every transition that touches S, so only the xi - 2 interior transitions
/// contribute.
struct Tour {
  std::uint64_t xi = 0;
  double w = 0.0;
  std::vector<NodeId> nodes;  // empty unless recording was requested
};

/// Coverage of the original graph by a set of tours.
struct CrawlCost {
  std::uint64_t distinct_nodes = 0;  // seeds plus distinct interior nodes visited
  std::uint64_t distinct_edges = 0;  // distinct original edges traversed
  std::uint64_t total_steps = 0;     // sum of xi

  double node_fraction(std::size_t node_count) const {
    return node_count == 0 ? 0.0 : static_cast<double>(distinct_nodes) / node_count;
  }
  double edge_fraction(std::size_t edge_count) const {
    return edge_count == 0 ? 0.0 : static_cast<double>(distinct_edges) / edge_count;
  }
};

struct TourSet {
  std::vector<Tour> tours;
  std::uint64_t master_seed = 0;
  CrawlCost crawl_cost;
  /// Per original edge: traversed by at least one tour. Feeds the crawl
  /// subgraph used by the configuration-model baseline.
  std::vector<bool> edge_seen;

  std::size_t m() const noexcept { return tours.size(); }
};

struct TourOptions {
  bool record_nodes = false;
  std::uint64_t step_cap = 1'000'000'000;
};

/// Walks one tour. Raises Error if the step cap is reached; tours are never
/// truncated. `seen_nodes` / `seen_edges`, when non-null, are marked with
/// the G' nodes and original edges the tour touches.
Tour run_tour(const SuperNodeGraph& sg, EdgeEvaluator& f, Rng& rng, const TourOptions& options = {},
              std::vector<bool>* seen_nodes = nullptr, std::vector<bool>* seen_edges = nullptr);

/// Re-evaluates w from a recorded node sequence (S, X_2, ..., X_xi). With
/// `close_tour` the implicit return transition (X_xi, S) is summed as well;
/// it touches S, so both variants give the same value.
double tour_reward_from_nodes(const SuperNodeGraph& sg, EdgeEvaluator& f,
                              const std::vector<NodeId>& nodes, bool close_tour = false);

/// Runs m independent tours. Tour k draws from substream_seed(master_seed, k),
/// so the result does not depend on `workers`.
TourSet run_tours(const SuperNodeGraph& sg, const EdgeFunction& f, std::size_t m,
                  std::uint64_t master_seed, std::size_t workers = 1,
                  const TourOptions& options = {});

}  // namespace supertour
