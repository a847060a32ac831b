#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "tempcore/temporal_graph.hpp"

namespace tempcore {

using Core = std::uint32_t;

/// Coreness of every node of the universe; absent nodes hold 0.
struct CorenessMap {
  std::vector<Core> values;

  CorenessMap() = default;
  explicit CorenessMap(std::size_t num_nodes) : values(num_nodes, 0) {}
  explicit CorenessMap(std::vector<Core> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  Core operator[](NodeId u) const { return values[u]; }
  Core& operator[](NodeId u) { return values[u]; }

  friend bool operator==(const CorenessMap&, const CorenessMap&) = default;
};

/// Core decomposition by bucket-queue peeling, O(V + E).
CorenessMap peel(const WindowView& view);

/// Necessary conditions of a core decomposition: every value is bounded by
/// the degree, absent nodes hold 0, and each node of coreness k has at least
/// k neighbors of coreness >= k. Any map passing this is a lower bound of the
/// true coreness.
bool satisfies_core_property(const WindowView& view, const CorenessMap& cores);

}  // namespace tempcore
