#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempcore/kcore_static.hpp"
#include "tempcore/temporal_graph.hpp"

namespace tempcore {

/// Neighbor coreness estimate; kUnknown until the neighbor's first message.
using Estimate = Core;
inline constexpr Estimate kUnknown = std::numeric_limits<Estimate>::max();

struct Message {
  NodeId sender;
  Core estimate;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class Variant {
  Incremental,        // reuses estimates across epochs, delays broadcasts after a decrease
  BaselineFullReset,  // forgets every estimate at each epoch change
};

std::string to_string(Variant v);

struct ProtocolConfig {
  Variant variant = Variant::Incremental;
  /// Skip a broadcast whose value equals the last one sent in this epoch.
  bool suppress_redundant = true;
};

struct NeighborEstimate {
  NodeId neighbor;
  Estimate value;

  friend bool operator==(const NeighborEstimate&, const NeighborEstimate&) = default;
};

/// State of one protocol participant.
///
/// `est` is sorted by neighbor id and always keyed by exactly the node's
/// neighbors in the active view.
struct NodeState {
  NodeId node = 0;
  Core core = 0;
  std::vector<NeighborEstimate> est;
  bool changed = false;
  bool delay_pending = false;
  std::optional<Core> last_broadcast;

  std::size_t degree() const noexcept { return est.size(); }
  /// Pointer to the entry for `v`, or nullptr when v is not a neighbor.
  NeighborEstimate* find(NodeId v);
  const NeighborEstimate* find(NodeId v) const;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Largest i such that at least i estimates are >= i, with estimates capped
/// at `degree`. Any unknown estimate short-circuits to min(current_core, degree).
Core compute_coreness(std::span<const NeighborEstimate> est, std::size_t degree, Core current_core);

/// Fresh state for a node joining the view: core = degree, all estimates unknown,
/// flagged so it announces its degree in the first iteration. Requires degree >= 1.
NodeState on_init(NodeId u, const WindowView& view);

/// Reaction to the epoch boundary for a node present in both `view` and the
/// previous one. `delta` is this node's neighborhood difference.
void on_epoch_change(NodeState& state, const NodeDelta& delta, const WindowView& view,
                     const ProtocolConfig& cfg);

/// Processes one iteration's inbox in order. Throws ProtocolError when a
/// sender is not a neighbor.
void on_receive(NodeState& state, std::span<const Message> inbox, const ProtocolConfig& cfg);

/// Main-loop body. Returns the value to broadcast to every neighbor, if any.
std::optional<Core> emit_phase(NodeState& state, const ProtocolConfig& cfg);

}  // namespace tempcore
