#include "tempcore/kcore_static.hpp"

#include <algorithm>

namespace tempcore {

CorenessMap peel(const WindowView& view) {
  const auto n = view.num_nodes();
  CorenessMap cores(n);
  if (n == 0) return cores;

  std::size_t max_degree = 0;
  std::vector<std::size_t> degree(n);
  for (NodeId u = 0; u < n; ++u) {
    degree[u] = view.degree(u);
    max_degree = std::max(max_degree, degree[u]);
  }

  // Bucket sort by degree: `order` holds nodes by ascending current degree,
  // `bucket_start[d]` is the first slot of degree d, `position[u]` u's slot.
  std::vector<std::size_t> bucket_start(max_degree + 2, 0);
  for (NodeId u = 0; u < n; ++u) ++bucket_start[degree[u] + 1];
  for (std::size_t d = 1; d < bucket_start.size(); ++d) bucket_start[d] += bucket_start[d - 1];

  std::vector<NodeId> order(n);
  std::vector<std::size_t> position(n);
  {
    auto next = bucket_start;
    for (NodeId u = 0; u < n; ++u) {
      position[u] = next[degree[u]]++;
      order[position[u]] = u;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId u = order[i];
    cores[u] = static_cast<Core>(degree[u]);
    for (NodeId v : view.neighbors(u)) {
      if (degree[v] <= degree[u]) continue;
      // Swap v with the first node of its bucket, then shrink v's degree.
      const auto dv = degree[v];
      const auto first_slot = bucket_start[dv];
      const NodeId w = order[first_slot];
      if (w != v) {
        std::swap(order[position[v]], order[first_slot]);
        std::swap(position[v], position[w]);
      }
      ++bucket_start[dv];
      --degree[v];
    }
  }
  return cores;
}

bool satisfies_core_property(const WindowView& view, const CorenessMap& cores) {
  if (cores.size() != view.num_nodes()) return false;
  for (NodeId u = 0; u < view.num_nodes(); ++u) {
    const Core k = cores[u];
    if (k > view.degree(u)) return false;
    if (k == 0) continue;
    std::size_t supporting = 0;
    for (NodeId v : view.neighbors(u)) {
      if (cores[v] >= k) ++supporting;
    }
    if (supporting < k) return false;
  }
  return true;
}

}  // namespace tempcore
