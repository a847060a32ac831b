#include "tempcore/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tempcore/errors.hpp"

namespace tempcore {

CorenessComparison compare_coreness(const CorenessMap& incremental, const CorenessMap& baseline,
                                    const WindowView& view) {
  if (incremental.size() != view.num_nodes() || baseline.size() != view.num_nodes()) {
    throw HarnessError("coreness maps do not cover the view's node universe");
  }
  CorenessComparison result;
  for (NodeId u : view.active_nodes()) {
    if (incremental[u] == baseline[u]) continue;
    ++result.errors;
    const auto diff = incremental[u] > baseline[u] ? incremental[u] - baseline[u] : baseline[u] - incremental[u];
    result.max_error_magnitude = std::max<std::size_t>(result.max_error_magnitude, diff);
  }
  return result;
}

double jaccard_dissimilarity(std::span<const Edge> prev, std::span<const Edge> cur) {
  std::size_t common = 0;
  auto a = prev.begin();
  auto b = cur.begin();
  while (a != prev.end() && b != cur.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  const std::size_t united = prev.size() + cur.size() - common;
  if (united == 0) return 1.0;
  return 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

std::size_t coreness_change_count(const CorenessMap& prev, const CorenessMap& cur) {
  const auto n = std::max(prev.size(), cur.size());
  std::size_t changes = 0;
  for (NodeId u = 0; u < n; ++u) {
    const Core before = u < prev.size() ? prev[u] : 0;
    const Core after = u < cur.size() ? cur[u] : 0;
    if (before != after) ++changes;
  }
  return changes;
}

std::vector<EpochMetrics> epoch_metrics(const TemporalGraph& g, std::span<const WindowView> views,
                                        std::span<const EpochRun> runs, Variant variant,
                                        DissimilaritySource source) {
  if (views.size() != runs.size()) throw HarnessError("one view per epoch run is required");
  std::vector<EpochMetrics> rows;
  rows.reserve(runs.size());
  const CorenessMap none(g.num_nodes());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    const auto& view = views[i];
    EpochMetrics m;
    m.epoch = run.epoch;
    m.variant = variant;
    m.active_nodes = view.active_nodes().size();
    m.active_edges = view.edge_count();
    m.activated_nodes = run.activated.size();
    m.iterations = static_cast<std::size_t>(run.iterations);
    m.total_messages = run.total_messages();
    if (i == 0) {
      m.jaccard_dissimilarity = 1.0;
    } else if (source == DissimilaritySource::RawSnapshots) {
      m.jaccard_dissimilarity = jaccard_dissimilarity(g.snapshot(run.epoch - 1), g.snapshot(run.epoch));
    } else {
      m.jaccard_dissimilarity = jaccard_dissimilarity(views[i - 1].edges(), view.edges());
    }
    m.coreness_changes = coreness_change_count(i == 0 ? none : runs[i - 1].final_coreness, run.final_coreness);
    rows.push_back(m);
  }
  return rows;
}

void attach_errors(std::span<EpochMetrics> incremental_rows, std::span<const EpochRun> incremental,
                   std::span<const EpochRun> baseline, std::span<const WindowView> views) {
  if (incremental_rows.size() != incremental.size() || incremental.size() != baseline.size() ||
      baseline.size() != views.size()) {
    throw HarnessError("runs of both variants must cover the same epochs");
  }
  for (std::size_t i = 0; i < incremental.size(); ++i) {
    const auto cmp = compare_coreness(incremental[i].final_coreness, baseline[i].final_coreness, views[i]);
    incremental_rows[i].errors = cmp.errors;
    incremental_rows[i].max_error_magnitude = cmp.max_error_magnitude;
  }
}

void write_csv(std::span<const EpochMetrics> rows, std::ostream& out) {
  std::string text = kCsvHeader;
  text += '\n';
  const auto optional_field = [](const std::optional<std::size_t>& v) {
    return v ? fmt::to_string(*v) : std::string{};
  };
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(text), "{},{},{},{},{},{},{},{},{},{:.6f},{}\n", r.epoch,
                   to_string(r.variant), r.active_nodes, r.active_edges, r.activated_nodes, r.iterations,
                   r.total_messages, optional_field(r.errors), optional_field(r.max_error_magnitude),
                   r.jaccard_dissimilarity, r.coreness_changes);
  }
  out << text;
  out.flush();
  if (!out) throw IoError("failed to write CSV");
}

namespace {

std::optional<VariantSummary> summarize_variant(std::span<const EpochMetrics> rows, Variant variant) {
  VariantSummary s;
  std::size_t activated = 0, messages = 0, iterations = 0;
  for (const auto& r : rows) {
    if (r.variant != variant) continue;
    ++s.epochs;
    if (r.iterations > 0) ++s.active_epochs;
    activated += r.activated_nodes;
    messages += r.total_messages;
    iterations += r.iterations;
  }
  if (s.epochs == 0) return std::nullopt;
  const auto e = static_cast<double>(s.epochs);
  s.mean_activated = static_cast<double>(activated) / e;
  s.mean_messages = static_cast<double>(messages) / e;
  s.mean_iterations = static_cast<double>(iterations) / e;
  s.mean_iterations_active =
      s.active_epochs == 0 ? 0.0 : static_cast<double>(iterations) / static_cast<double>(s.active_epochs);
  return s;
}

std::optional<double> ratio(const RunSummary& s, double VariantSummary::*field) {
  if (!s.incremental || !s.baseline) return std::nullopt;
  const double denominator = (*s.baseline).*field;
  if (denominator == 0.0) return std::nullopt;
  return (*s.incremental).*field / denominator;
}

}  // namespace

std::optional<double> RunSummary::activated_ratio() const { return ratio(*this, &VariantSummary::mean_activated); }
std::optional<double> RunSummary::message_ratio() const { return ratio(*this, &VariantSummary::mean_messages); }
std::optional<double> RunSummary::iteration_ratio() const {
  return ratio(*this, &VariantSummary::mean_iterations);
}

RunSummary summarize(std::span<const EpochMetrics> rows) {
  RunSummary s;
  s.incremental = summarize_variant(rows, Variant::Incremental);
  s.baseline = summarize_variant(rows, Variant::BaselineFullReset);

  std::size_t epochs = 0, errors = 0, max_magnitude = 0, percent_epochs = 0;
  double percent = 0;
  for (const auto& r : rows) {
    if (r.variant != Variant::Incremental || !r.errors) continue;
    ++epochs;
    errors += *r.errors;
    max_magnitude = std::max(max_magnitude, r.max_error_magnitude.value_or(0));
    if (r.active_nodes > 0) {
      ++percent_epochs;
      percent += 100.0 * static_cast<double>(*r.errors) / static_cast<double>(r.active_nodes);
    }
  }
  if (epochs > 0) {
    s.mean_errors = static_cast<double>(errors) / static_cast<double>(epochs);
    s.mean_error_percent = percent_epochs == 0 ? 0.0 : percent / static_cast<double>(percent_epochs);
    s.max_error_magnitude = max_magnitude;
  }
  return s;
}

void write_summary(const RunSummary& s, std::ostream& out) {
  const auto cell = [](const std::optional<VariantSummary>& v, double VariantSummary::*field) {
    return v ? fmt::format("{:>12.2f}", (*v).*field) : fmt::format("{:>12}", "-");
  };
  const auto ratio_cell = [](std::optional<double> r) {
    return r ? fmt::format("{:>8.2f}", *r) : fmt::format("{:>8}", "-");
  };

  fmt::print(out, "{:<24}{:>12}{:>12}{:>8}\n", "metric (mean per epoch)", "incremental", "baseline", "ratio");
  fmt::print(out, "{:<24}{}{}{}\n", "activated nodes", cell(s.incremental, &VariantSummary::mean_activated),
             cell(s.baseline, &VariantSummary::mean_activated), ratio_cell(s.activated_ratio()));
  fmt::print(out, "{:<24}{}{}{}\n", "total messages", cell(s.incremental, &VariantSummary::mean_messages),
             cell(s.baseline, &VariantSummary::mean_messages), ratio_cell(s.message_ratio()));
  fmt::print(out, "{:<24}{}{}{}\n", "iterations", cell(s.incremental, &VariantSummary::mean_iterations),
             cell(s.baseline, &VariantSummary::mean_iterations), ratio_cell(s.iteration_ratio()));
  std::optional<double> active_ratio;
  if (s.incremental && s.baseline && s.baseline->mean_iterations_active > 0) {
    active_ratio = s.incremental->mean_iterations_active / s.baseline->mean_iterations_active;
  }
  fmt::print(out, "{:<24}{}{}{}\n", "iterations (active)",
             cell(s.incremental, &VariantSummary::mean_iterations_active),
             cell(s.baseline, &VariantSummary::mean_iterations_active), ratio_cell(active_ratio));
  if (s.mean_errors) {
    fmt::print(out, "avg errors per epoch: {:.2f} ({:.2f}%), max magnitude {}\n", *s.mean_errors,
               *s.mean_error_percent, *s.max_error_magnitude);
  }
}

}  // namespace tempcore
