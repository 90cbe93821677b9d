#include "supertour/synthetic.hpp"

#include <algorithm>
#include <vector>

#include "supertour/errors.hpp"
#include "supertour/random.hpp"

namespace supertour::synthetic {

Graph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ConfigError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph complete(std::uint32_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph path(std::uint32_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges));
}

Graph cycle(std::uint32_t n) {
  if (n < 3) throw ConfigError("a cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return Graph(n, std::move(edges));
}

Graph star(std::uint32_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v});
  return Graph(n, std::move(edges));
}

Graph dumbbell(std::uint32_t n) {
  if (n < 2) throw ConfigError("dumbbell bells need at least 2 nodes");
  std::vector<Edge> edges;
  for (std::uint32_t offset : {0u, n}) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.push_back({offset + u, offset + v});
    }
  }
  edges.push_back({n - 1, n});
  return Graph(2 * n, std::move(edges));
}

Graph powerlaw_cluster(std::uint32_t n, std::uint32_t m, double triad_probability,
                       std::uint64_t seed) {
  if (m < 1 || n <= m) throw ConfigError("powerlaw_cluster needs 1 <= m < n");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<NodeId> endpoints;  // preferential-attachment urn

  auto link = [&](NodeId a, NodeId b) {
    edges.push_back({a, b});
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  auto linked = [&](NodeId a, NodeId b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };

  // Seed clique on the first m + 1 nodes.
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) link(u, v);
  }

  for (NodeId v = m + 1; v < n; ++v) {
    std::uint32_t added = 0;
    NodeId last = 0;
    bool have_last = false;
    while (added < m) {
      NodeId target = 0;
      bool chosen = false;
      if (have_last && rng.uniform() < triad_probability) {
        std::vector<NodeId> candidates;
        for (NodeId w : adj[last]) {
          if (w != v && !linked(v, w)) candidates.push_back(w);
        }
        if (!candidates.empty()) {
          target = candidates[rng.below(candidates.size())];
          chosen = true;
        }
      }
      if (!chosen) {
        do {
          target = endpoints[rng.below(endpoints.size())];
        } while (target == v || linked(v, target));
      }
      link(v, target);
      last = target;
      have_last = true;
      ++added;
    }
  }
  return Graph(n, std::move(edges));
}

Graph planted_partition(std::uint32_t n, double p_in, double p_out, const std::string& attribute,
                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = (u % 2 == v % 2) ? p_in : p_out;
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  Graph g(n, std::move(edges));
  for (NodeId v = 0; v < n; ++v) g.set_label(v, attribute, v % 2 == 0 ? "a" : "b");
  return g;
}

void assign_binary_labels(Graph& g, const std::string& attribute, std::uint64_t seed) {
  Rng rng(seed);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    g.set_label(v, attribute, rng.below(2) == 0 ? "0" : "1");
  }
}

}  // namespace supertour::synthetic
