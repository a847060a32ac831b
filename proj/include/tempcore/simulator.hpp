#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tempcore/kcore_static.hpp"
#include "tempcore/protocol.hpp"
#include "tempcore/temporal_graph.hpp"

namespace tempcore {

enum class ExecutionMode {
  Sequential,  // reference
  Parallel,    // OpenMP across nodes inside each phase; falls back to sequential without OpenMP
};

struct Limits {
  /// Defaults to 10 x the number of active nodes of the epoch.
  std::optional<std::size_t> max_iterations;
};

struct BroadcastEvent {
  Epoch epoch;
  int iteration;
  NodeId sender;
  Core value;
};

struct IterationTrace {
  Epoch epoch;
  int iteration;
  std::size_t messages;
  std::size_t activated_so_far;
};

struct SimulationOptions {
  ProtocolConfig protocol;
  Limits limits;
  ExecutionMode mode = ExecutionMode::Sequential;
  int num_threads = 0;  // 0 = OpenMP default; only used in Parallel mode

  std::function<void(const BroadcastEvent&)> on_broadcast;
  std::function<void(const IterationTrace&)> on_iteration;
};

/// Outcome of one epoch of the protocol.
///
/// `messages_per_iteration` counts broadcasts (one per sender per iteration);
/// `deliveries` counts the per-recipient copies of those broadcasts.
struct EpochRun {
  Epoch epoch = 0;
  int iterations = 0;
  std::vector<std::size_t> messages_per_iteration;
  std::size_t deliveries = 0;
  std::vector<NodeId> activated;  // ascending
  CorenessMap final_coreness;

  std::size_t total_messages() const;

  friend bool operator==(const EpochRun&, const EpochRun&) = default;
};

/// Owns every node state and drives synchronous rounds, one epoch at a time.
///
/// Each round runs emit -> deliver -> receive. Messages emitted in round i are
/// received in round i, so a node reacting to them answers in round i + 1 at
/// the earliest. An epoch converges at the first round with no broadcast and
/// no deferred broadcast; that silent round is not counted as an iteration.
class RoundEngine {
public:
  RoundEngine(std::size_t num_nodes, SimulationOptions options);

  /// Advances to `view`. `delta` must be diff_views(previous view, view); the
  /// previous view is empty before the first call.
  EpochRun run_epoch(const WindowView& view, const ViewDelta& delta);

  const std::optional<NodeState>& state(NodeId u) const { return states_.at(u); }
  std::size_t num_nodes() const noexcept { return states_.size(); }

private:
  void begin_epoch(const WindowView& view, const ViewDelta& delta);
  bool parallel() const noexcept { return options_.mode == ExecutionMode::Parallel; }

  SimulationOptions options_;
  std::vector<std::optional<NodeState>> states_;
  std::vector<NodeId> alive_;  // nodes holding state, ascending
  std::vector<std::vector<Message>> inbox_;
};

std::vector<EpochRun> run_simulation(const TemporalGraph& g, const WindowConfig& cfg,
                                     const SimulationOptions& options);

/// Same as above over views precomputed for epochs 1..n, in order.
std::vector<EpochRun> run_simulation(std::span<const WindowView> views, std::size_t num_nodes,
                                     const SimulationOptions& options);

}  // namespace tempcore
