#include "tempcore/synthetic.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "tempcore/errors.hpp"

namespace tempcore {

namespace {

std::uint64_t key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

TemporalGraph generate_synthetic(const SyntheticParams& p) {
  if (p.nodes < 2) throw ConfigError("synthetic graph needs at least 2 nodes");
  if (p.epochs < 1) throw ConfigError("synthetic graph needs at least 1 epoch");
  if (!(p.edge_prob > 0.0 && p.edge_prob <= 1.0)) throw ConfigError("edge probability must be in (0, 1]");
  if (!(p.churn_rate >= 0.0 && p.churn_rate <= 1.0)) throw ConfigError("churn rate must be in [0, 1]");

  std::mt19937_64 rng(p.seed);
  std::bernoulli_distribution coin(p.edge_prob);
  std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(p.nodes - 1));

  std::vector<Edge> slots;
  for (NodeId u = 0; u < p.nodes; ++u) {
    for (NodeId v = u + 1; v < p.nodes; ++v) {
      if (coin(rng)) slots.push_back({u, v});
    }
  }
  if (slots.empty()) throw ConfigError("first epoch drew no edges; raise edge probability");

  const std::size_t max_pairs = p.nodes * (p.nodes - 1) / 2;
  constexpr int kAttempts = 1000;

  std::vector<TemporalEdge> edges;
  edges.reserve(slots.size() * static_cast<std::size_t>(p.epochs));
  std::vector<std::size_t> order(slots.size());
  for (Epoch t = 1; t <= p.epochs; ++t) {
    if (t > 1) {
      std::unordered_set<std::uint64_t> previous;
      for (const auto& e : slots) previous.insert(key(e.u, e.v));
      auto current = previous;

      const auto rewires = static_cast<std::size_t>(std::llround(p.churn_rate * static_cast<double>(slots.size())));
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      for (std::size_t i = 0; i < rewires; ++i) {
        std::uniform_int_distribution<std::size_t> pick_slot(i, order.size() - 1);
        std::swap(order[i], order[pick_slot(rng)]);
        auto& slot = slots[order[i]];
        if (previous.size() >= max_pairs) break;
        for (int attempt = 0; attempt < kAttempts; ++attempt) {
          const NodeId a = pick_node(rng);
          const NodeId b = pick_node(rng);
          if (a == b) continue;
          const auto k = key(a, b);
          if (previous.contains(k) || current.contains(k)) continue;
          current.erase(key(slot.u, slot.v));
          current.insert(k);
          slot = {std::min(a, b), std::max(a, b)};
          break;
        }
      }
    }
    for (const auto& e : slots) edges.push_back({e.u, e.v, t});
  }
  return TemporalGraph::from_edges(p.nodes, std::move(edges));
}

}  // namespace tempcore
