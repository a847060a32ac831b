#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tempcore {

using NodeId = std::uint32_t;
using Epoch = int;

/// Undirected edge in canonical form (u < v).
struct Edge {
  NodeId u;
  NodeId v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct TemporalEdge {
  NodeId u;
  NodeId v;
  Epoch t;

  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Node universe plus timestamped undirected edges. Immutable once built.
///
/// Edges are kept canonical (u < v), unique per (u, v, t), and grouped by
/// epoch so that each snapshot is a sorted contiguous range.
class TemporalGraph {
public:
  TemporalGraph() = default;

  /// Canonicalizes, drops self-loops and duplicates. Throws DomainError for
  /// epochs < 1 or ids outside [0, num_nodes). `original_ids`, when given,
  /// must have exactly num_nodes entries.
  static TemporalGraph from_edges(std::size_t num_nodes, std::vector<TemporalEdge> edges,
                                  std::vector<std::int64_t> original_ids = {});

  std::size_t num_nodes() const noexcept { return original_ids_.size(); }
  Epoch lifespan() const noexcept { return lifespan_; }
  std::span<const TemporalEdge> edges() const noexcept { return edges_; }

  /// Raw edge set of epoch t (sorted, canonical). Empty span for empty epochs.
  std::span<const Edge> snapshot(Epoch t) const;

  std::int64_t original_id(NodeId u) const { return original_ids_.at(u); }
  std::span<const std::int64_t> original_ids() const noexcept { return original_ids_; }

private:
  std::vector<std::int64_t> original_ids_;
  std::vector<TemporalEdge> edges_;
  std::vector<Edge> snapshot_edges_;
  std::vector<std::size_t> snapshot_offsets_;  // lifespan + 2 entries, index by epoch
  Epoch lifespan_ = 0;
};

/// Third column is seconds; epochs are `duration`-second buckets anchored at the minimum timestamp.
struct FixedDuration {
  std::int64_t seconds;
};

/// Third column already holds a 1-based epoch index.
struct ExplicitEpochs {};

using EpochingRule = std::variant<FixedDuration, ExplicitEpochs>;

/// Reads "u v ts" lines; '#' lines and blank lines are skipped. Node ids are
/// remapped densely in ascending order of their original value.
TemporalGraph parse_edge_list(std::istream& in, const EpochingRule& rule);
TemporalGraph load_edge_list(const std::filesystem::path& path, const EpochingRule& rule);

struct Aggregation {
  enum class Kind { Intersection, Union, UnionH };

  Kind kind = Kind::Intersection;
  int h = 1;  // only meaningful for UnionH

  static constexpr Aggregation intersection() { return {Kind::Intersection, 1}; }
  static constexpr Aggregation union_any() { return {Kind::Union, 1}; }
  static constexpr Aggregation union_h(int h) { return {Kind::UnionH, h}; }

  /// Minimum number of distinct epochs an edge needs inside a window of `window_length` epochs.
  int required_occurrences(int window_length) const;

  friend bool operator==(const Aggregation&, const Aggregation&) = default;
};

std::string to_string(const Aggregation& agg);

/// Accepts "intersection", "union" and "union-h" (with `h`).
Aggregation parse_aggregation(std::string_view name, int h);

struct WindowConfig {
  int memory_size = 1;
  Aggregation aggregation = Aggregation::intersection();

  /// Throws DomainError unless memory_size >= 1 and, for UnionH, 1 <= h <= memory_size.
  void validate() const;
};

/// Static graph seen at one epoch after sliding-window aggregation.
///
/// Adjacency is stored in CSR form over the full node universe; nodes of
/// degree zero are considered absent from the view.
class WindowView {
public:
  WindowView() = default;

  /// `edges` must be canonical, sorted and unique.
  WindowView(Epoch epoch, std::size_t num_nodes, std::vector<Edge> edges);

  static WindowView empty(std::size_t num_nodes) { return WindowView(0, num_nodes, {}); }

  Epoch epoch() const noexcept { return epoch_; }
  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool present(NodeId u) const { return degree(u) > 0; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], degree(u)};
  }
  bool has_edge(NodeId u, NodeId v) const;

  /// Nodes with degree >= 1, ascending.
  const std::vector<NodeId>& active_nodes() const noexcept { return active_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

private:
  Epoch epoch_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<NodeId> active_;
};

/// Aggregated view at epoch t over the window [max(1, t - w + 1), t].
WindowView window_view(const TemporalGraph& g, Epoch t, const WindowConfig& cfg);

/// Views for epochs 1..lifespan. Epochs are independent and evaluated in parallel when OpenMP is on.
std::vector<WindowView> compute_views(const TemporalGraph& g, const WindowConfig& cfg);

struct NodeDelta {
  NodeId node;
  std::vector<NodeId> gained;
  std::vector<NodeId> lost;

  bool empty() const noexcept { return gained.empty() && lost.empty(); }
};

/// Per-node neighborhood differences between two consecutive views. Contains
/// one entry for every node present in either view, ascending by node.
struct ViewDelta {
  std::vector<NodeDelta> nodes;

  const NodeDelta* find(NodeId u) const;
};

ViewDelta diff_views(const WindowView& prev, const WindowView& cur);

}  // namespace tempcore
