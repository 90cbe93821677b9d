#include "supertour/supernode.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "supertour/errors.hpp"

namespace supertour {

SeedSet::SeedSet(const Graph& g, std::vector<NodeId> members) : members_(std::move(members)) {
  if (members_.empty()) throw ConfigError("seed set must not be empty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw ConfigError("seed set contains duplicate nodes");
  }
  if (members_.back() >= g.node_count()) {
    throw ConfigError("seed node id " + std::to_string(members_.back()) + " is not in the graph");
  }
  std::vector<bool> covered(g.component_count(), false);
  for (NodeId s : members_) covered[g.component_of()[s]] = true;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!covered[g.component_of()[v]]) {
      throw ConfigError("seed set misses the connected component containing node '" + g.token(v) +
                        "'");
    }
  }
}

bool SeedSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

SuperNodeGraph::SuperNodeGraph(const Graph& base, SeedSet seeds)
    : base_(&base), seeds_(std::move(seeds)) {
  const std::size_t n = base.node_count();
  to_contracted_.assign(n, kSuperNode);
  to_original_.push_back(static_cast<NodeId>(-1));
  std::vector<bool> is_seed(n, false);
  for (NodeId s : seeds_.members()) is_seed[s] = true;
  for (NodeId v = 0; v < n; ++v) {
    if (is_seed[v]) continue;
    to_contracted_[v] = static_cast<NodeId>(to_original_.size());
    to_original_.push_back(v);
  }

  for (EdgeId id = 0; id < base.edge_count(); ++id) {
    const auto& e = base.edge(id);
    (is_seed[e.u] || is_seed[e.v] ? boundary_ : interior_).push_back(id);
  }

  offsets_.assign(node_count() + 1, 0);
  // Super-node slots: every boundary edge leaving I_n.
  for (NodeId s : seeds_.members()) {
    const auto nbrs = base.neighbors(s);
    const auto ids = base.incident_edges(s);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!is_seed[nbrs[i]]) slots_.push_back({to_contracted_[nbrs[i]], ids[i]});
    }
  }
  offsets_[1] = slots_.size();
  for (NodeId c = 1; c < node_count(); ++c) {
    const NodeId v = to_original_[c];
    const auto nbrs = base.neighbors(v);
    const auto ids = base.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      slots_.push_back({to_contracted_[nbrs[i]], ids[i]});
    }
    offsets_[c + 1] = slots_.size();
  }

  // Connectivity of G' (implied by the seed invariant; checked anyway).
  std::vector<bool> seen(node_count(), false);
  std::queue<NodeId> frontier;
  seen[kSuperNode] = true;
  frontier.push(kSuperNode);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop();
    for (const Slot& s : neighbors(x)) {
      if (!seen[s.neighbor]) {
        seen[s.neighbor] = true;
        ++reached;
        frontier.push(s.neighbor);
      }
    }
  }
  if (reached != node_count()) {
    for (NodeId c = 1; c < node_count(); ++c) {
      if (!seen[c]) {
        throw ConfigError("contracted graph is disconnected at node '" +
                          base.token(to_original_[c]) + "'");
      }
    }
  }
}

std::uint64_t SuperNodeGraph::degree(NodeId v) const {
  if (v >= node_count()) throw ConfigError("unknown contracted node id " + std::to_string(v));
  return offsets_[v + 1] - offsets_[v];
}

std::span<const Slot> SuperNodeGraph::neighbors(NodeId v) const {
  if (v >= node_count()) throw ConfigError("unknown contracted node id " + std::to_string(v));
  return {slots_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

NodeId SuperNodeGraph::original(NodeId v) const {
  if (v == kSuperNode || v >= node_count()) {
    throw ConfigError("contracted node " + std::to_string(v) + " has no single original node");
  }
  return to_original_[v];
}

std::uint32_t SuperNodeGraph::multiplicity(NodeId a, NodeId b) const {
  std::uint32_t count = 0;
  for (const Slot& s : neighbors(a)) count += s.neighbor == b ? 1 : 0;
  return count;
}

}  // namespace supertour
