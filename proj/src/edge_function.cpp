#include "supertour/edge_function.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "supertour/errors.hpp"

namespace supertour {

namespace {

std::vector<std::string> split(std::string_view text, char sep, std::size_t max_parts) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (parts.size() + 1 < max_parts) {
    const auto pos = text.find(sep, begin);
    if (pos == std::string_view::npos) break;
    parts.emplace_back(text.substr(begin, pos - begin));
    begin = pos + 1;
  }
  parts.emplace_back(text.substr(begin));
  return parts;
}

std::string_view require_label(const Graph& g, NodeId v, const std::string& attribute) {
  const auto value = g.label(v, attribute);
  if (!value) {
    throw ConfigError("node '" + g.token(v) + "' has no label '" + attribute + "'");
  }
  return *value;
}

}  // namespace

double NodeFunction::operator()(const Graph& g, NodeId v) const {
  switch (kind) {
    case Kind::one:
      return 1.0;
    case Kind::degree:
      return static_cast<double>(g.degree(v));
    case Kind::label_indicator:
      return require_label(g, v, attribute) == value ? 1.0 : 0.0;
  }
  return 0.0;
}

EdgeFunction EdgeFunction::parse(std::string_view spec) {
  const auto parts = split(spec, ':', 2);
  const std::string& name = parts[0];
  const bool has_param = parts.size() > 1;
  const std::string param = has_param ? parts[1] : std::string{};

  auto no_param = [&] {
    if (has_param) throw ConfigError("function '" + name + "' takes no parameter");
  };
  auto need_param = [&](const char* what) {
    if (!has_param || param.empty()) {
      throw ConfigError("function '" + name + "' needs a parameter (" + what + ")");
    }
  };

  EdgeFunction f;
  if (name == "zero") {
    no_param();
    f.kind = Kind::zero;
    f.bound_hint = 0.0;
  } else if (name == "constant_one") {
    no_param();
    f.kind = Kind::constant_one;
    f.bound_hint = 1.0;
  } else if (name == "degree_product") {
    no_param();
    f.kind = Kind::degree_product;
  } else if (name == "degree_sum_threshold") {
    need_param("threshold");
    f.kind = Kind::degree_sum_threshold;
    std::size_t used = 0;
    try {
      f.threshold = std::stod(param, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != param.size() || !std::isfinite(f.threshold)) {
      throw ConfigError("invalid threshold '" + param + "'");
    }
    f.bound_hint = 1.0;
  } else if (name == "label_match" || name == "label_mismatch") {
    need_param("attribute");
    f.kind = name == "label_match" ? Kind::label_match : Kind::label_mismatch;
    f.attribute = param;
    f.bound_hint = 1.0;
  } else if (name == "node_lift") {
    need_param("one | degree | label:attribute=value");
    f.kind = Kind::node_lift;
    if (param == "one") {
      f.node_function.kind = NodeFunction::Kind::one;
      f.bound_hint = 2.0;
    } else if (param == "degree") {
      f.node_function.kind = NodeFunction::Kind::degree;
      f.bound_hint = 2.0;
    } else if (param.rfind("label:", 0) == 0) {
      const auto kv = split(std::string_view(param).substr(6), '=', 2);
      if (kv.size() != 2 || kv[0].empty()) {
        throw ConfigError("node_lift label needs attribute=value, got '" + param + "'");
      }
      f.node_function = {NodeFunction::Kind::label_indicator, kv[0], kv[1]};
      f.bound_hint = 2.0;
    } else {
      throw ConfigError("unknown node function '" + param + "'");
    }
  } else if (name == "clustering_local" || name == "clustering") {
    no_param();
    f.kind = Kind::clustering_local;
    f.bound_hint = 2.0 / 3.0;
  } else {
    throw ConfigError("unknown edge function '" + name + "'");
  }
  return f;
}

std::string EdgeFunction::spec() const {
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::constant_one:
      return "constant_one";
    case Kind::degree_product:
      return "degree_product";
    case Kind::degree_sum_threshold: {
      std::ostringstream ss;
      ss.precision(17);
      ss << "degree_sum_threshold:" << threshold;
      return ss.str();
    }
    case Kind::label_match:
      return "label_match:" + attribute;
    case Kind::label_mismatch:
      return "label_mismatch:" + attribute;
    case Kind::node_lift:
      switch (node_function.kind) {
        case NodeFunction::Kind::one:
          return "node_lift:one";
        case NodeFunction::Kind::degree:
          return "node_lift:degree";
        case NodeFunction::Kind::label_indicator:
          return "node_lift:label:" + node_function.attribute + "=" + node_function.value;
      }
      break;
    case Kind::clustering_local:
      return "clustering_local";
  }
  return "?";
}

double node_lift_term(const NodeFunction& fn, const Graph& g, NodeId v) {
  const auto d = g.degree(v);
  return d == 0 ? 0.0 : fn(g, v) / static_cast<double>(d);
}

double evaluate_node_lift(const NodeFunction& fn, const Graph& g, NodeId u, NodeId v) {
  return node_lift_term(fn, g, u) + node_lift_term(fn, g, v);
}

double local_clustering(const Graph& g, NodeId v) {
  const auto d = g.degree(v);
  if (d <= 2) return 0.0;
  const auto nbrs = g.neighbors(v);
  std::vector<NodeId> distinct;
  for (NodeId a : nbrs) {
    if (a != v && (distinct.empty() || distinct.back() != a)) distinct.push_back(a);
  }
  std::size_t closed = 0;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (g.adjacent(distinct[i], distinct[j])) ++closed;
    }
  }
  const double pairs = 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
  return static_cast<double>(closed) / pairs;
}

double evaluate_clustering(const Graph& g, NodeId u, NodeId v) {
  return local_clustering(g, u) / g.degree(u) + local_clustering(g, v) / g.degree(v);
}

double evaluate(const EdgeFunction& f, const Graph& g, NodeId u, NodeId v) {
  using K = EdgeFunction::Kind;
  switch (f.kind) {
    case K::zero:
      return 0.0;
    case K::constant_one:
      return 1.0;
    case K::degree_product:
      return static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
    case K::degree_sum_threshold:
      return static_cast<double>(g.degree(u) + g.degree(v)) > f.threshold ? 1.0 : 0.0;
    case K::label_match:
      return require_label(g, u, f.attribute) == require_label(g, v, f.attribute) ? 1.0 : 0.0;
    case K::label_mismatch:
      return require_label(g, u, f.attribute) != require_label(g, v, f.attribute) ? 1.0 : 0.0;
    case K::node_lift:
      return evaluate_node_lift(f.node_function, g, u, v);
    case K::clustering_local:
      return evaluate_clustering(g, u, v);
  }
  return 0.0;
}

EdgeEvaluator::EdgeEvaluator(const EdgeFunction& f, const Graph& g) : f_(f), graph_(&g) {
  using K = EdgeFunction::Kind;
  if (f_.kind == K::label_match || f_.kind == K::label_mismatch) {
    std::map<std::string_view, int> codes;
    label_code_.assign(g.node_count(), -1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (const auto value = g.label(v, f_.attribute)) {
        label_code_[v] = codes.emplace(*value, static_cast<int>(codes.size())).first->second;
      }
    }
  }
  if (f_.kind == K::node_lift || f_.kind == K::clustering_local) {
    node_cache_.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  }
}

double EdgeEvaluator::label_value(NodeId v) {
  const int code = label_code_[v];
  if (code < 0) require_label(*graph_, v, f_.attribute);  // throws with the node name
  return code;
}

double EdgeEvaluator::node_term(NodeId v) {
  double& cached = node_cache_[v];
  if (std::isnan(cached)) {
    cached = f_.kind == EdgeFunction::Kind::clustering_local
                 ? local_clustering(*graph_, v) / graph_->degree(v)
                 : node_lift_term(f_.node_function, *graph_, v);
  }
  return cached;
}

double EdgeEvaluator::operator()(NodeId u, NodeId v) {
  using K = EdgeFunction::Kind;
  switch (f_.kind) {
    case K::label_match:
      return label_value(u) == label_value(v) ? 1.0 : 0.0;
    case K::label_mismatch:
      return label_value(u) != label_value(v) ? 1.0 : 0.0;
    case K::node_lift:
    case K::clustering_local:
      return node_term(u) + node_term(v);
    default:
      return evaluate(f_, *graph_, u, v);
  }
}

}  // namespace supertour
