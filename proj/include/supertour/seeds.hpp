#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "supertour/graph.hpp"
#include "supertour/supernode.hpp"

namespace supertour {

/// k nodes drawn uniformly without replacement, then patched so every
/// component is represented (see patch_component_coverage).
SeedSet select_seeds_uniform(const Graph& g, std::size_t k, std::uint64_t rng_seed);

/// Random-walk crawl followed by top-degree selection.
///
/// One simple random walk per component, started at its lowest-id node, runs
/// until it has visited ceil(budget_fraction * |C|) distinct nodes (at least
/// two when |C| > 1). The k visited nodes of largest degree are returned, ties
/// going to the lower id, and coverage is patched as for the uniform policy.
SeedSet select_seeds_rw_topk(const Graph& g, std::size_t k, double budget_fraction,
                             std::uint64_t rng_seed);

/// Seeds named by their node tokens.
SeedSet select_seeds_explicit(const Graph& g, const std::vector<std::string>& tokens);

/// Makes `members` touch every component while keeping its size.
///
/// Uncovered components are handled in order of their lowest node id; each
/// gets its lowest-id node, which replaces the highest-id member of the
/// currently best-represented component (a component holding at least two
/// members). Throws if members.size() is smaller than the component count.
std::vector<NodeId> patch_component_coverage(const Graph& g, std::vector<NodeId> members);

}  // namespace supertour
