#include "supertour/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "supertour/errors.hpp"
#include "supertour/random.hpp"

namespace supertour {

namespace {

void check_k(const Graph& g, std::size_t k) {
  if (k > g.node_count()) {
    throw ConfigError("cannot select " + std::to_string(k) + " seeds from a graph with " +
                      std::to_string(g.node_count()) + " nodes");
  }
  if (k < g.component_count()) {
    throw ConfigError("need at least " + std::to_string(g.component_count()) +
                      " seeds to cover every component, got " + std::to_string(k));
  }
}

}  // namespace

std::vector<NodeId> patch_component_coverage(const Graph& g, std::vector<NodeId> members) {
  const auto& comp = g.component_of();
  if (members.size() < g.component_count()) {
    throw ConfigError("too few seeds to cover " + std::to_string(g.component_count()) +
                      " components");
  }
  std::vector<std::vector<NodeId>> per_component(g.component_count());
  for (NodeId s : members) per_component[comp[s]].push_back(s);

  // Components are numbered by lowest member id, so the lowest-id node of
  // component c is the first node carrying label c.
  std::vector<NodeId> representative(g.component_count(), 0);
  std::vector<bool> found(g.component_count(), false);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!found[comp[v]]) {
      found[comp[v]] = true;
      representative[comp[v]] = v;
    }
  }

  for (std::size_t c = 0; c < g.component_count(); ++c) {
    if (!per_component[c].empty()) continue;
    std::size_t donor = 0;
    for (std::size_t d = 1; d < per_component.size(); ++d) {
      if (per_component[d].size() > per_component[donor].size()) donor = d;
    }
    auto& pool = per_component[donor];
    const auto victim = std::max_element(pool.begin(), pool.end());
    pool.erase(victim);
    per_component[c].push_back(representative[c]);
  }

  std::vector<NodeId> out;
  out.reserve(members.size());
  for (const auto& pool : per_component) out.insert(out.end(), pool.begin(), pool.end());
  std::sort(out.begin(), out.end());
  return out;
}

SeedSet select_seeds_uniform(const Graph& g, std::size_t k, std::uint64_t rng_seed) {
  check_k(g, k);
  // Partial Fisher-Yates: the first k entries are a uniform k-subset.
  std::vector<NodeId> pool(g.node_count());
  std::iota(pool.begin(), pool.end(), NodeId{0});
  Rng rng(rng_seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return SeedSet(g, patch_component_coverage(g, std::move(pool)));
}

SeedSet select_seeds_rw_topk(const Graph& g, std::size_t k, double budget_fraction,
                             std::uint64_t rng_seed) {
  if (!(budget_fraction > 0.0 && budget_fraction <= 1.0)) {
    throw ConfigError("budget fraction must lie in (0, 1]");
  }
  check_k(g, k);

  const auto& comp = g.component_of();
  std::vector<std::size_t> size(g.component_count(), 0);
  std::vector<NodeId> start(g.component_count(), 0);
  for (NodeId v = g.node_count(); v-- > 0;) {
    ++size[comp[v]];
    start[comp[v]] = v;
  }

  std::vector<bool> visited(g.node_count(), false);
  std::vector<NodeId> position(start);
  std::vector<std::size_t> seen(g.component_count(), 0);
  std::size_t total_seen = 0;
  Rng rng(rng_seed);

  auto visit = [&](std::size_t c, NodeId v) {
    if (!visited[v]) {
      visited[v] = true;
      ++seen[c];
      ++total_seen;
    }
  };
  auto walk_until = [&](std::size_t c, std::size_t target) {
    while (seen[c] < target) {
      const auto nbrs = g.neighbors(position[c]);
      position[c] = nbrs[rng.below(nbrs.size())];
      visit(c, position[c]);
    }
  };

  for (std::size_t c = 0; c < g.component_count(); ++c) {
    visit(c, start[c]);
    auto target = static_cast<std::size_t>(std::ceil(budget_fraction * static_cast<double>(size[c])));
    target = std::clamp<std::size_t>(target, std::min<std::size_t>(size[c], 2), size[c]);
    walk_until(c, target);
  }
  // Keep crawling the least-explored component until k nodes are visible.
  while (total_seen < k) {
    std::size_t c = 0;
    for (std::size_t d = 1; d < size.size(); ++d) {
      if (size[d] - seen[d] > size[c] - seen[c]) c = d;
    }
    walk_until(c, seen[c] + 1);
  }

  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (visited[v]) candidates.push_back(v);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  candidates.resize(k);
  return SeedSet(g, patch_component_coverage(g, std::move(candidates)));
}

SeedSet select_seeds_explicit(const Graph& g, const std::vector<std::string>& tokens) {
  std::vector<NodeId> members;
  members.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto id = g.find_token(t);
    if (!id) throw ConfigError("seed '" + t + "' is not a node of the graph");
    members.push_back(*id);
  }
  return SeedSet(g, std::move(members));
}

}  // namespace supertour
