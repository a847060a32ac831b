#include "tempcore/protocol.hpp"

#include <algorithm>

#include "tempcore/errors.hpp"

namespace tempcore {

std::string to_string(Variant v) {
  return v == Variant::Incremental ? "incremental" : "baseline";
}

NeighborEstimate* NodeState::find(NodeId v) {
  auto it = std::lower_bound(est.begin(), est.end(), v,
                             [](const NeighborEstimate& e, NodeId id) { return e.neighbor < id; });
  return (it != est.end() && it->neighbor == v) ? &*it : nullptr;
}

const NeighborEstimate* NodeState::find(NodeId v) const {
  return const_cast<NodeState*>(this)->find(v);
}

Core compute_coreness(std::span<const NeighborEstimate> est, std::size_t degree, Core current_core) {
  thread_local std::vector<std::size_t> count;
  count.assign(degree + 1, 0);
  for (const auto& e : est) {
    if (e.value == kUnknown) return std::min<Core>(current_core, static_cast<Core>(degree));
    ++count[std::min<std::size_t>(e.value, degree)];
  }
  std::size_t total = 0;
  for (std::size_t i = degree + 1; i-- > 0;) {
    total += count[i];
    if (total >= i) return static_cast<Core>(i);
  }
  return static_cast<Core>(degree);
}

namespace {

std::vector<NeighborEstimate> unknown_estimates(std::span<const NodeId> neighbors) {
  std::vector<NeighborEstimate> est;
  est.reserve(neighbors.size());
  for (NodeId v : neighbors) est.push_back({v, kUnknown});
  return est;
}

void check_alignment(const NodeState& state, const WindowView& view) {
  const auto neighbors = view.neighbors(state.node);
  const bool aligned = std::equal(state.est.begin(), state.est.end(), neighbors.begin(), neighbors.end(),
                                  [](const NeighborEstimate& e, NodeId v) { return e.neighbor == v; });
  if (!aligned) {
    throw ProtocolError("estimate table of node " + std::to_string(state.node) +
                        " does not match its neighborhood");
  }
}

}  // namespace

NodeState on_init(NodeId u, const WindowView& view) {
  const auto neighbors = view.neighbors(u);
  if (neighbors.empty()) throw ProtocolError("isolated node " + std::to_string(u) + " cannot join");
  NodeState s;
  s.node = u;
  s.core = static_cast<Core>(neighbors.size());
  s.est = unknown_estimates(neighbors);
  s.changed = true;
  return s;
}

void on_epoch_change(NodeState& state, const NodeDelta& delta, const WindowView& view,
                     const ProtocolConfig& cfg) {
  state.last_broadcast.reset();
  state.delay_pending = false;

  if (cfg.variant == Variant::BaselineFullReset) {
    state.est = unknown_estimates(view.neighbors(state.node));
    state.core = static_cast<Core>(state.est.size());
    state.changed = true;
    return;
  }

  if (!delta.lost.empty()) {
    std::erase_if(state.est, [&](const NeighborEstimate& e) {
      return std::binary_search(delta.lost.begin(), delta.lost.end(), e.neighbor);
    });
  }
  if (!delta.gained.empty()) {
    std::vector<NeighborEstimate> merged;
    merged.reserve(state.est.size() + delta.gained.size());
    auto it = state.est.begin();
    for (NodeId v : delta.gained) {
      for (; it != state.est.end() && it->neighbor < v; ++it) merged.push_back(*it);
      merged.push_back({v, kUnknown});
    }
    merged.insert(merged.end(), it, state.est.end());
    state.est = std::move(merged);
  }
  check_alignment(state, view);
  const auto degree = state.degree();

  if (!delta.gained.empty()) {
    state.core = static_cast<Core>(degree);
    state.changed = true;
  } else if (!delta.lost.empty()) {
    const Core old_core = state.core;
    state.core = compute_coreness(state.est, degree, state.core);
    state.changed = state.core != old_core;
  }
}

void on_receive(NodeState& state, std::span<const Message> inbox, const ProtocolConfig& cfg) {
  const auto degree = state.degree();
  for (const auto& msg : inbox) {
    auto* entry = state.find(msg.sender);
    if (entry == nullptr) {
      throw ProtocolError("node " + std::to_string(state.node) + " received a message from non-neighbor " +
                          std::to_string(msg.sender));
    }
    entry->value = msg.estimate;
    const Core t = compute_coreness(state.est, degree, state.core);
    if (t != state.core) {
      if (t < state.core && cfg.variant == Variant::Incremental) state.delay_pending = true;
      state.core = t;
      state.changed = true;
    }
  }
}

std::optional<Core> emit_phase(NodeState& state, const ProtocolConfig& cfg) {
  if (state.delay_pending) {
    state.delay_pending = false;
    return std::nullopt;
  }
  if (!state.changed) return std::nullopt;
  state.changed = false;
  if (cfg.suppress_redundant && state.last_broadcast == state.core) return std::nullopt;
  state.last_broadcast = state.core;
  return state.core;
}

}  // namespace tempcore
