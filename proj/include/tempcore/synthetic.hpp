#pragma once

#include <cstdint>

#include "tempcore/temporal_graph.hpp"

namespace tempcore {

struct SyntheticParams {
  std::size_t nodes = 50;
  int epochs = 10;
  double edge_prob = 0.1;
  double churn_rate = 0.2;
  std::uint64_t seed = 0;
};

/// Epoch 1 is a G(n, p) draw; every later epoch copies the previous edge set
/// and rewires round(churn_rate * |E|) randomly chosen edges to pairs absent
/// from the previous epoch. Deterministic in `seed`. Throws ConfigError for
/// degenerate parameters, including a first epoch without edges.
TemporalGraph generate_synthetic(const SyntheticParams& params);

}  // namespace tempcore
