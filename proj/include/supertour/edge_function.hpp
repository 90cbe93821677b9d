#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supertour/graph.hpp"

namespace supertour {

/// Node statistic g(v) lifted to edges by node_lift.
struct NodeFunction {
  enum class Kind { one, degree, label_indicator };

  Kind kind = Kind::one;
  std::string attribute;  // label_indicator only
  std::string value;      // label_indicator only

  double operator()(const Graph& g, NodeId v) const;
};

/// Edge function f(u, v) from the fixed registry. Always symmetric and always
/// evaluated on the original graph.
struct EdgeFunction {
  enum class Kind {
    zero,
    constant_one,
    degree_product,        // d_u * d_v
    degree_sum_threshold,  // 1 if d_u + d_v > threshold
    label_match,           // 1 if both endpoints share the attribute value
    label_mismatch,
    node_lift,             // g(u)/d_u + g(v)/d_v, sums to sum_v g(v)
    clustering_local,      // c(u)/d_u + c(v)/d_v with c the local clustering
  };

  Kind kind = Kind::constant_one;
  double threshold = 0.0;
  std::string attribute;
  NodeFunction node_function;
  /// Known bound B >= sup f, when the function admits one a priori.
  std::optional<double> bound_hint;

  /// Parses `name[:param...]`, e.g. `degree_sum_threshold:50`,
  /// `label_match:breed`, `node_lift:label:gender=F`, `clustering_local`.
  static EdgeFunction parse(std::string_view spec);

  /// Canonical spec string; parse(f.spec()) reproduces f.
  std::string spec() const;
};

double evaluate(const EdgeFunction& f, const Graph& g, NodeId u, NodeId v);

/// g(v)/d_v, the per-endpoint term of a node lift.
double node_lift_term(const NodeFunction& fn, const Graph& g, NodeId v);
/// Symmetric node-lift edge value g(u)/d_u + g(v)/d_v. Summed over all edges
/// this gives sum_v g(v) over non-isolated nodes.
double evaluate_node_lift(const NodeFunction& fn, const Graph& g, NodeId u, NodeId v);

/// 1(d_v > 2) * (closed neighbor pairs of v) / C(d_v, 2), using distinct
/// neighbors for the pair count and the multigraph degree for d_v.
double local_clustering(const Graph& g, NodeId v);
/// Symmetric clustering lift c(u)/d_u + c(v)/d_v. Summing over all edges and
/// dividing by |V| gives the mean local clustering coefficient.
double evaluate_clustering(const Graph& g, NodeId u, NodeId v);

/// Evaluator bound to one graph, with per-node caches. Not thread-safe: use
/// one instance per worker.
class EdgeEvaluator {
public:
  EdgeEvaluator(const EdgeFunction& f, const Graph& g);

  double operator()(NodeId u, NodeId v);
  double edge(EdgeId e) {
    const auto& ed = graph_->edge(e);
    return (*this)(ed.u, ed.v);
  }

  const EdgeFunction& function() const noexcept { return f_; }
  const Graph& graph() const noexcept { return *graph_; }

private:
  double label_value(NodeId v);
  double node_term(NodeId v);

  EdgeFunction f_;
  const Graph* graph_;
  std::vector<int> label_code_;
  std::vector<double> node_cache_;
};

}  // namespace supertour
