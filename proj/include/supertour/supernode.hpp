#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "supertour/graph.hpp"

namespace supertour {

/// The seed nodes I_n. Always non-empty, within range, duplicate-free, and
/// touching every connected component of the graph it was built for.
class SeedSet {
public:
  /// Validates the invariants against g. Throws ConfigError naming the lowest
  /// node of the first uncovered component.
  SeedSet(const Graph& g, std::vector<NodeId> members);

  /// Sorted ascending.
  const std::vector<NodeId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(NodeId v) const;

private:
  std::vector<NodeId> members_;
};

/// One adjacency slot of the contracted graph: the neighbor in G' and the id
/// of the original edge it stands for.
struct Slot {
  NodeId neighbor;
  EdgeId edge;
};

/// The multigraph G' obtained by contracting the seeds into one super-node.
///
/// Node 0 of G' is the super-node; interior nodes V \ I_n get ids 1..|V'|-1 in
/// increasing original-id order. Every original edge with exactly one seed
/// endpoint becomes a super-node edge; edges with both endpoints in I_n do not
/// appear in G'. All edges touching a seed are listed in boundary_edges().
///
/// Holds a reference to the base graph, which must outlive it.
class SuperNodeGraph {
public:
  static constexpr NodeId kSuperNode = 0;

  SuperNodeGraph(const Graph& base, SeedSet seeds);

  const Graph& base() const noexcept { return *base_; }
  const SeedSet& seeds() const noexcept { return seeds_; }

  std::size_t node_count() const noexcept { return to_original_.size(); }
  std::uint64_t degree(NodeId v) const;
  std::uint64_t supernode_degree() const noexcept { return degree(kSuperNode); }
  /// Sum of G' degrees.
  std::uint64_t total_degree() const noexcept { return slots_.size(); }

  /// Neighbor slots of v in G', one per edge endpoint (multiplicities kept).
  /// This is the only access the walker has to the graph.
  std::span<const Slot> neighbors(NodeId v) const;

  /// Original id of an interior node. Throws for the super-node.
  NodeId original(NodeId v) const;
  /// G' id of an original node (kSuperNode for seeds).
  NodeId contracted(NodeId original_node) const { return to_contracted_.at(original_node); }

  /// Original edges with at least one endpoint in I_n, each listed once.
  const std::vector<EdgeId>& boundary_edges() const noexcept { return boundary_; }
  /// Original edges with both endpoints outside I_n.
  const std::vector<EdgeId>& interior_edges() const noexcept { return interior_; }

  /// Number of parallel edges joining a and b in G'.
  std::uint32_t multiplicity(NodeId a, NodeId b) const;

private:
  const Graph* base_;
  SeedSet seeds_;
  std::vector<NodeId> to_original_;
  std::vector<NodeId> to_contracted_;
  std::vector<std::size_t> offsets_;
  std::vector<Slot> slots_;
  std::vector<EdgeId> boundary_;
  std::vector<EdgeId> interior_;
};

}  // namespace supertour
