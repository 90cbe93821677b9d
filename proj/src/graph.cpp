#include "supertour/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "supertour/errors.hpp"

namespace supertour {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, bool allow_self_loops)
    : edges_(std::move(edges)), degree_(node_count, 0) {
  for (auto& e : edges_) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ConfigError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") references a node outside 0.." + std::to_string(node_count));
    }
    if (e.u == e.v && !allow_self_loops) {
      throw ConfigError("self-loop at node " + std::to_string(e.u) +
                        " rejected (self-loops are disabled)");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    ++degree_[e.u];
    ++degree_[e.v];
  }

  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + degree_[v];
  adjacency_.resize(offsets_.back());
  adjacency_edges_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto [u, v] = edges_[id];
    adjacency_[cursor[u]] = v;
    adjacency_edges_[cursor[u]++] = id;
    adjacency_[cursor[v]] = u;
    adjacency_edges_[cursor[v]++] = id;
  }

  // Sort each slice by neighbor id so adjacent() can binary-search.
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < node_count; ++v) {
    const std::size_t begin = offsets_[v];
    const std::size_t len = offsets_[v + 1] - begin;
    order.resize(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return adjacency_[begin + a] < adjacency_[begin + b];
    });
    std::vector<NodeId> nbrs(len);
    std::vector<EdgeId> ids(len);
    for (std::size_t i = 0; i < len; ++i) {
      nbrs[i] = adjacency_[begin + order[i]];
      ids[i] = adjacency_edges_[begin + order[i]];
    }
    std::copy(nbrs.begin(), nbrs.end(), adjacency_.begin() + static_cast<std::ptrdiff_t>(begin));
    std::copy(ids.begin(), ids.end(), adjacency_edges_.begin() + static_cast<std::ptrdiff_t>(begin));
  }

  build_components();

  std::vector<std::string> tokens(node_count);
  for (std::size_t v = 0; v < node_count; ++v) tokens[v] = std::to_string(v);
  set_tokens(std::move(tokens));
}

void Graph::build_components() {
  const std::size_t n = node_count();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  component_.assign(n, unset);
  component_count_ = 0;
  std::queue<NodeId> frontier;
  for (NodeId start = 0; start < n; ++start) {
    if (component_[start] != unset) continue;
    const auto c = static_cast<std::uint32_t>(component_count_++);
    component_[start] = c;
    frontier.push(start);
    while (!frontier.empty()) {
      const NodeId x = frontier.front();
      frontier.pop();
      for (NodeId y : neighbors(x)) {
        if (component_[y] == unset) {
          component_[y] = c;
          frontier.push(y);
        }
      }
    }
  }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  if (v >= node_count()) throw ConfigError("unknown node id " + std::to_string(v));
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const EdgeId> Graph::incident_edges(NodeId v) const {
  if (v >= node_count()) throw ConfigError("unknown node id " + std::to_string(v));
  return {adjacency_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::adjacent(NodeId a, NodeId b) const {
  const auto na = neighbors(a);
  const auto nb = neighbors(b);
  if (na.size() <= nb.size()) return std::binary_search(na.begin(), na.end(), b);
  return std::binary_search(nb.begin(), nb.end(), a);
}

std::optional<NodeId> Graph::find_token(std::string_view token) const {
  const auto it = token_index_.find(token);
  if (it == token_index_.end()) return std::nullopt;
  return it->second;
}

void Graph::set_tokens(std::vector<std::string> tokens) {
  if (tokens.size() != node_count()) throw ConfigError("token table size mismatch");
  token_index_.clear();
  for (NodeId v = 0; v < tokens.size(); ++v) {
    if (!token_index_.emplace(tokens[v], v).second) {
      throw ConfigError("duplicate node token '" + tokens[v] + "'");
    }
  }
  tokens_ = std::move(tokens);
}

std::optional<std::string_view> Graph::label(NodeId v, std::string_view attribute) const {
  if (v >= labels_.size()) return std::nullopt;
  const auto it = labels_[v].find(attribute);
  if (it == labels_[v].end()) return std::nullopt;
  return std::string_view(it->second);
}

void Graph::set_label(NodeId v, std::string attribute, std::string value) {
  if (v >= node_count()) throw ConfigError("label for unknown node id " + std::to_string(v));
  if (labels_.empty()) labels_.resize(node_count());
  labels_[v].insert_or_assign(std::move(attribute), std::move(value));
}

namespace {

// Splits a line into whitespace-separated tokens; returns false for blank or
// comment lines.
bool tokenize(const std::string& line, std::vector<std::string>& out) {
  out.clear();
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return !out.empty() && out.front().front() != '#';
}

}  // namespace

Graph read_edge_list(std::istream& in, const std::string& source_name, const LoadOptions& options) {
  std::vector<std::string> tokens;
  std::map<std::string, NodeId, std::less<>> ids;
  std::vector<Edge> edges;
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<NodeId>(tokens.size()));
    if (inserted) tokens.push_back(tok);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!tokenize(line, fields)) continue;
    if (fields.size() != 2) {
      throw ParseError(source_name, line_no,
                       "expected two node tokens, found " + std::to_string(fields.size()));
    }
    const NodeId u = intern(fields[0]);
    const NodeId v = intern(fields[1]);
    if (u == v && !options.allow_self_loops) {
      throw ParseError(source_name, line_no, "self-loop at node '" + fields[0] + "' rejected");
    }
    edges.push_back({u, v});
  }

  Graph g(tokens.size(), std::move(edges), options.allow_self_loops);
  g.set_tokens(std::move(tokens));
  return g;
}

void read_labels(std::istream& in, Graph& g, const std::string& source_name) {
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!tokenize(line, fields)) continue;
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "expected `node attribute value`, found " + std::to_string(fields.size()) +
                           " tokens");
    }
    const auto v = g.find_token(fields[0]);
    if (!v) throw ParseError(source_name, line_no, "unknown node '" + fields[0] + "'");
    g.set_label(*v, fields[1], fields[2]);
  }
}

Graph load_graph(const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& labels_path,
                 const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file " + path.string());
  Graph g = read_edge_list(in, path.string(), options);
  if (labels_path) {
    std::ifstream lin(*labels_path);
    if (!lin) throw ConfigError("cannot open label file " + labels_path->string());
    read_labels(lin, g, labels_path->string());
  }
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& e : g.edges()) out << g.token(e.u) << ' ' << g.token(e.v) << '\n';
}

void write_labels(const Graph& g, std::ostream& out) {
  const auto& labels = g.labels();
  for (NodeId v = 0; v < labels.size(); ++v) {
    for (const auto& [attribute, value] : labels[v]) {
      out << g.token(v) << ' ' << attribute << ' ' << value << '\n';
    }
  }
}

}  // namespace supertour
