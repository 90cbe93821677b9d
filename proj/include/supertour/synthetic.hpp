#pragma once

#include <cstdint>
#include <string>

#include "supertour/graph.hpp"

namespace supertour::synthetic {

/// G(n, p): every pair joined independently with probability p.
Graph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

Graph complete(std::uint32_t n);
Graph path(std::uint32_t n);
Graph cycle(std::uint32_t n);
/// Star with hub 0 and leaves 1..n-1.
Graph star(std::uint32_t n);

/// Two copies of K_n (nodes 0..n-1 and n..2n-1) joined by the edge (n-1, n).
Graph dumbbell(std::uint32_t n);

/// Preferential attachment with triad formation (Holme-Kim): each new node
/// attaches `m` edges; after each preferential edge, with probability
/// `triad_probability` the next edge closes a triangle instead. Produces a
/// heavy-tailed degree sequence with non-trivial clustering.
Graph powerlaw_cluster(std::uint32_t n, std::uint32_t m, double triad_probability,
                       std::uint64_t seed);

/// Two-block stochastic block model. Nodes get attribute `attribute` set to
/// "a" or "b" (alternating), edges appear with p_in inside a block and p_out
/// across blocks.
Graph planted_partition(std::uint32_t n, double p_in, double p_out, const std::string& attribute,
                        std::uint64_t seed);

/// Assigns attribute values "0"/"1" uniformly at random to every node.
void assign_binary_labels(Graph& g, const std::string& attribute, std::uint64_t seed);

}  // namespace supertour::synthetic
