#include "tempcore/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <tuple>

#include "tempcore/errors.hpp"

namespace tempcore {

TemporalGraph TemporalGraph::from_edges(std::size_t num_nodes, std::vector<TemporalEdge> edges,
                                        std::vector<std::int64_t> original_ids) {
  if (num_nodes > std::numeric_limits<NodeId>::max()) {
    throw DomainError("node universe too large");
  }
  if (original_ids.empty()) {
    original_ids.resize(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) original_ids[i] = static_cast<std::int64_t>(i);
  } else if (original_ids.size() != num_nodes) {
    throw DomainError("original id table does not match node count");
  }

  std::erase_if(edges, [](const TemporalEdge& e) { return e.u == e.v; });
  for (auto& e : edges) {
    if (e.t < 1) throw DomainError("edge epoch must be >= 1");
    if (e.u >= num_nodes || e.v >= num_nodes) throw DomainError("edge endpoint outside node universe");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  TemporalGraph g;
  g.original_ids_ = std::move(original_ids);
  g.edges_ = std::move(edges);
  g.lifespan_ = g.edges_.empty() ? 0 : g.edges_.back().t;

  g.snapshot_edges_.reserve(g.edges_.size());
  g.snapshot_offsets_.assign(static_cast<std::size_t>(g.lifespan_) + 2, 0);
  for (const auto& e : g.edges_) {
    g.snapshot_edges_.push_back({e.u, e.v});
    ++g.snapshot_offsets_[static_cast<std::size_t>(e.t) + 1];
  }
  for (std::size_t i = 1; i < g.snapshot_offsets_.size(); ++i) {
    g.snapshot_offsets_[i] += g.snapshot_offsets_[i - 1];
  }
  return g;
}

std::span<const Edge> TemporalGraph::snapshot(Epoch t) const {
  if (t < 1 || t > lifespan_) return {};
  const auto begin = snapshot_offsets_[static_cast<std::size_t>(t)];
  const auto end = snapshot_offsets_[static_cast<std::size_t>(t) + 1];
  return {snapshot_edges_.data() + begin, end - begin};
}

namespace {

struct RawEdge {
  std::int64_t u;
  std::int64_t v;
  std::int64_t ts;
};

bool parse_int(std::string_view field, std::int64_t& out) {
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

TemporalGraph parse_edge_list(std::istream& in, const EpochingRule& rule) {
  const bool explicit_epochs = std::holds_alternative<ExplicitEpochs>(rule);
  std::int64_t duration = 0;
  if (const auto* fixed = std::get_if<FixedDuration>(&rule)) {
    if (fixed->seconds <= 0) throw DomainError("epoch duration must be positive");
    duration = fixed->seconds;
  }

  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view fields[3];
    std::size_t count = 0;
    while (count < 3) {
      const auto start = rest.find_first_not_of(" \t\r\f\v");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      if (count == 0 && rest.front() == '#') break;
      const auto end = std::min(rest.find_first_of(" \t\r\f\v"), rest.size());
      fields[count++] = rest.substr(0, end);
      rest.remove_prefix(end);
    }
    if (count == 0) continue;  // blank or comment
    if (count < 3) throw ParseError(line_no, "expected 3 fields \"u v timestamp\"");

    RawEdge e{};
    if (!parse_int(fields[0], e.u) || !parse_int(fields[1], e.v) || !parse_int(fields[2], e.ts)) {
      throw ParseError(line_no, "non-integer field");
    }
    if (explicit_epochs && e.ts < 1) throw ParseError(line_no, "epoch index must be >= 1");
    if (e.u == e.v) continue;
    raw.push_back(e);
  }
  if (in.bad()) throw IoError("read failure");
  if (raw.empty()) throw EmptyInputError("no edges after filtering");

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  std::int64_t min_ts = raw.front().ts;
  for (const auto& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
    min_ts = std::min(min_ts, e.ts);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto dense = [&ids](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<TemporalEdge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    std::int64_t epoch = explicit_epochs ? e.ts : 1 + (e.ts - min_ts) / duration;
    if (epoch > std::numeric_limits<Epoch>::max()) throw DomainError("epoch index overflow");
    edges.push_back({dense(e.u), dense(e.v), static_cast<Epoch>(epoch)});
  }
  const auto n = ids.size();
  return TemporalGraph::from_edges(n, std::move(edges), std::move(ids));
}

TemporalGraph load_edge_list(const std::filesystem::path& path, const EpochingRule& rule) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_edge_list(in, rule);
}

int Aggregation::required_occurrences(int window_length) const {
  switch (kind) {
    case Kind::Intersection:
      return window_length;
    case Kind::Union:
      return 1;
    case Kind::UnionH:
      return std::min(h, window_length);
  }
  return window_length;
}

std::string to_string(const Aggregation& agg) {
  switch (agg.kind) {
    case Aggregation::Kind::Intersection:
      return "intersection";
    case Aggregation::Kind::Union:
      return "union";
    case Aggregation::Kind::UnionH:
      return "union-" + std::to_string(agg.h);
  }
  return "?";
}

Aggregation parse_aggregation(std::string_view name, int h) {
  if (name == "intersection") return Aggregation::intersection();
  if (name == "union") return Aggregation::union_any();
  if (name == "union-h") return Aggregation::union_h(h);
  throw DomainError("unknown aggregation function: " + std::string(name));
}

void WindowConfig::validate() const {
  if (memory_size < 1) throw DomainError("memory size must be >= 1");
  if (aggregation.kind == Aggregation::Kind::UnionH &&
      (aggregation.h < 1 || aggregation.h > memory_size)) {
    throw DomainError("union-h requires 1 <= h <= memory size");
  }
}

WindowView::WindowView(Epoch epoch, std::size_t num_nodes, std::vector<Edge> edges)
    : epoch_(epoch), edges_(std::move(edges)), offsets_(num_nodes + 1, 0) {
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

  // Edges sorted by (u, v) fill every list in ascending order: the smaller
  // neighbors of x arrive while scanning rows u < x, the larger ones in row x.
  neighbors_.resize(edges_.size() * 2);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    neighbors_[cursor[e.u]++] = e.v;
    neighbors_[cursor[e.v]++] = e.u;
  }
  for (NodeId u = 0; u < num_nodes; ++u) {
    if (present(u)) active_.push_back(u);
  }
}

bool WindowView::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

WindowView window_view(const TemporalGraph& g, Epoch t, const WindowConfig& cfg) {
  cfg.validate();
  if (t < 1 || t > g.lifespan()) {
    throw DomainError("epoch " + std::to_string(t) + " outside [1, " + std::to_string(g.lifespan()) + "]");
  }
  const Epoch first = std::max(1, t - cfg.memory_size + 1);
  const int required = cfg.aggregation.required_occurrences(t - first + 1);

  std::vector<Edge> pooled;
  for (Epoch e = first; e <= t; ++e) {
    const auto snap = g.snapshot(e);
    pooled.insert(pooled.end(), snap.begin(), snap.end());
  }
  std::sort(pooled.begin(), pooled.end());

  // Each snapshot holds a pair at most once, so a run length is the number of
  // distinct epochs the pair occurs in.
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    if (static_cast<int>(j - i) >= required) kept.push_back(pooled[i]);
    i = j;
  }
  return WindowView(t, g.num_nodes(), std::move(kept));
}

std::vector<WindowView> compute_views(const TemporalGraph& g, const WindowConfig& cfg) {
  cfg.validate();
  const int lifespan = g.lifespan();
  std::vector<WindowView> views(static_cast<std::size_t>(lifespan));
#pragma omp parallel for schedule(dynamic)
  for (int t = 1; t <= lifespan; ++t) {
    views[static_cast<std::size_t>(t - 1)] = window_view(g, t, cfg);
  }
  return views;
}

const NodeDelta* ViewDelta::find(NodeId u) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), u,
                             [](const NodeDelta& d, NodeId id) { return d.node < id; });
  return (it != nodes.end() && it->node == u) ? &*it : nullptr;
}

ViewDelta diff_views(const WindowView& prev, const WindowView& cur) {
  const auto nbrs = [](const WindowView& view, NodeId u) -> std::span<const NodeId> {
    return u < view.num_nodes() ? view.neighbors(u) : std::span<const NodeId>{};
  };
  const auto n = std::max(prev.num_nodes(), cur.num_nodes());

  ViewDelta delta;
  for (NodeId u = 0; u < n; ++u) {
    const auto before = nbrs(prev, u);
    const auto after = nbrs(cur, u);
    if (before.empty() && after.empty()) continue;
    NodeDelta d{u, {}, {}};
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                        std::back_inserter(d.gained));
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::back_inserter(d.lost));
    delta.nodes.push_back(std::move(d));
  }
  return delta;
}

}  // namespace tempcore
