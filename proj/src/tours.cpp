#include "supertour/tours.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "supertour/errors.hpp"

namespace supertour {

namespace {

// f on a G' transition: zero whenever the super-node is involved.
double transition_value(const SuperNodeGraph& sg, EdgeEvaluator& f, NodeId a, NodeId b) {
  if (a == SuperNodeGraph::kSuperNode || b == SuperNodeGraph::kSuperNode) return 0.0;
  return f(sg.original(a), sg.original(b));
}

}  // namespace

Tour run_tour(const SuperNodeGraph& sg, EdgeEvaluator& f, Rng& rng, const TourOptions& options,
              std::vector<bool>* seen_nodes, std::vector<bool>* seen_edges) {
  Tour tour;
  NodeId current = SuperNodeGraph::kSuperNode;
  if (options.record_nodes) tour.nodes.push_back(current);
  if (sg.supernode_degree() == 0) {
    // Seeds cover every node: the walk has nowhere to go and returns at once.
    tour.xi = 1;
    return tour;
  }
  do {
    const auto slots = sg.neighbors(current);
    const Slot& next = slots[rng.below(slots.size())];
    ++tour.xi;
    if (seen_edges) (*seen_edges)[next.edge] = true;
    if (current != SuperNodeGraph::kSuperNode && next.neighbor != SuperNodeGraph::kSuperNode) {
      tour.w += f(sg.original(current), sg.original(next.neighbor));
    }
    current = next.neighbor;
    if (current != SuperNodeGraph::kSuperNode) {
      if (seen_nodes) (*seen_nodes)[current] = true;
      if (options.record_nodes) tour.nodes.push_back(current);
      if (tour.xi >= options.step_cap) {
        throw Error("tour exceeded the step cap of " + std::to_string(options.step_cap) +
                    " steps; refusing to truncate");
      }
    }
  } while (current != SuperNodeGraph::kSuperNode);
  return tour;
}

double tour_reward_from_nodes(const SuperNodeGraph& sg, EdgeEvaluator& f,
                              const std::vector<NodeId>& nodes, bool close_tour) {
  double w = 0.0;
  for (std::size_t t = 1; t < nodes.size(); ++t) w += transition_value(sg, f, nodes[t - 1], nodes[t]);
  if (close_tour && !nodes.empty()) {
    w += transition_value(sg, f, nodes.back(), SuperNodeGraph::kSuperNode);
  }
  return w;
}

TourSet run_tours(const SuperNodeGraph& sg, const EdgeFunction& f, std::size_t m,
                  std::uint64_t master_seed, std::size_t workers, const TourOptions& options) {
  if (m < 1) throw ConfigError("need at least one tour (m >= 1)");
  workers = std::clamp<std::size_t>(workers, 1, m);

  TourSet result;
  result.master_seed = master_seed;
  result.tours.resize(m);

  struct Shard {
    std::vector<bool> nodes;
    std::vector<bool> edges;
  };
  std::vector<Shard> shards(workers);

  auto work = [&](std::size_t w) {
    EdgeEvaluator eval(f, sg.base());
    Shard& shard = shards[w];
    shard.nodes.assign(sg.node_count(), false);
    shard.edges.assign(sg.base().edge_count(), false);
    // Contiguous blocks; tour k always uses substream k.
    const std::size_t begin = m * w / workers;
    const std::size_t end = m * (w + 1) / workers;
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(substream_seed(master_seed, k));
      result.tours[k] = run_tour(sg, eval, rng, options, &shard.nodes, &shard.edges);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<bool> nodes(sg.node_count(), false);
  result.edge_seen.assign(sg.base().edge_count(), false);
  for (const Shard& s : shards) {
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = nodes[i] || s.nodes[i];
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      result.edge_seen[i] = result.edge_seen[i] || s.edges[i];
    }
  }
  result.crawl_cost.distinct_nodes =
      sg.seeds().size() + static_cast<std::uint64_t>(std::count(nodes.begin() + 1, nodes.end(), true));
  result.crawl_cost.distinct_edges =
      static_cast<std::uint64_t>(std::count(result.edge_seen.begin(), result.edge_seen.end(), true));
  for (const Tour& t : result.tours) result.crawl_cost.total_steps += t.xi;
  return result;
}

}  // namespace supertour
