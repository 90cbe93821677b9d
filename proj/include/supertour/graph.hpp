#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace supertour {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge, canonicalized so that u <= v.
struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Per-node attribute map (attribute name -> value). Values are kept as text;
/// label functions compare them verbatim.
using NodeLabels = std::map<std::string, std::string, std::less<>>;

/// Immutable undirected multigraph with dense ids 0..N-1.
///
/// Parallel edges are kept and counted in the degree. Self-loops are rejected
/// unless explicitly allowed; a self-loop contributes 2 to the degree.
/// Adjacency is stored CSR-style, one slot per edge endpoint, so neighbors(v)
/// is a multiset whose size equals degree(v).
class Graph {
public:
  Graph() = default;

  Graph(std::size_t node_count, std::vector<Edge> edges, bool allow_self_loops = false);

  std::size_t node_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::uint32_t degree(NodeId v) const { return degree_.at(v); }
  std::span<const std::uint32_t> degrees() const noexcept { return degree_; }

  /// Neighbor multiset of v (one entry per incident edge endpoint).
  std::span<const NodeId> neighbors(NodeId v) const;
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const;

  /// True when some edge joins a and b.
  bool adjacent(NodeId a, NodeId b) const;

  /// Component index per node; components numbered by lowest member id.
  const std::vector<std::uint32_t>& component_of() const noexcept { return component_; }
  std::size_t component_count() const noexcept { return component_count_; }

  // Token and label bookkeeping. Graphs built in memory get tokens "0".."N-1".
  const std::string& token(NodeId v) const { return tokens_.at(v); }
  std::optional<NodeId> find_token(std::string_view token) const;
  void set_tokens(std::vector<std::string> tokens);

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Attribute value of v, or nullopt when v carries no such attribute.
  std::optional<std::string_view> label(NodeId v, std::string_view attribute) const;
  void set_label(NodeId v, std::string attribute, std::string value);
  const std::vector<NodeLabels>& labels() const noexcept { return labels_; }

private:
  void build_components();

  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
  std::vector<std::uint32_t> component_;
  std::size_t component_count_ = 0;
  std::vector<std::string> tokens_;
  std::map<std::string, NodeId, std::less<>> token_index_;
  std::vector<NodeLabels> labels_;
};

struct LoadOptions {
  bool allow_self_loops = false;
};

/// Reads an edge list: `#` comments and blank lines skipped, otherwise exactly
/// two whitespace-separated node tokens per line. Tokens are renumbered in
/// order of first appearance; duplicate lines become parallel edges.
Graph read_edge_list(std::istream& in, const std::string& source_name = "<stream>",
                     const LoadOptions& options = {});

/// Reads `node attribute value` triples into g. Unknown node tokens are errors.
void read_labels(std::istream& in, Graph& g, const std::string& source_name = "<stream>");

Graph load_graph(const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& labels_path = std::nullopt,
                 const LoadOptions& options = {});

void write_edge_list(const Graph& g, std::ostream& out);
void write_labels(const Graph& g, std::ostream& out);

}  // namespace supertour
