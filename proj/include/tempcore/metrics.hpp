#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tempcore/kcore_static.hpp"
#include "tempcore/protocol.hpp"
#include "tempcore/simulator.hpp"
#include "tempcore/temporal_graph.hpp"

namespace tempcore {

struct EpochMetrics {
  Epoch epoch = 0;
  Variant variant = Variant::Incremental;
  std::size_t active_nodes = 0;
  std::size_t active_edges = 0;
  std::size_t activated_nodes = 0;
  std::size_t iterations = 0;
  std::size_t total_messages = 0;
  std::optional<std::size_t> errors;               // incremental rows of a two-variant run only
  std::optional<std::size_t> max_error_magnitude;  // same
  double jaccard_dissimilarity = 1.0;
  std::size_t coreness_changes = 0;

  friend bool operator==(const EpochMetrics&, const EpochMetrics&) = default;
};

struct CorenessComparison {
  std::size_t errors = 0;
  std::size_t max_error_magnitude = 0;
};

/// Counts active nodes of `view` where the maps disagree. Throws HarnessError
/// when either map does not cover the view's node universe.
CorenessComparison compare_coreness(const CorenessMap& incremental, const CorenessMap& baseline,
                                    const WindowView& view);

/// 1 - |A n B| / |A u B| over canonical sorted edge sets; 1 when the union is empty.
double jaccard_dissimilarity(std::span<const Edge> prev, std::span<const Edge> cur);

/// Nodes whose value differs, treating missing entries as 0. Maps may have different sizes.
std::size_t coreness_change_count(const CorenessMap& prev, const CorenessMap& cur);

enum class DissimilaritySource {
  RawSnapshots,  // E_{t-1} vs E_t as recorded in the input
  WindowViews,   // aggregated views of consecutive epochs
};

/// Per-epoch rows for one variant's run. `views[i]` must be the view run[i] was computed on.
std::vector<EpochMetrics> epoch_metrics(const TemporalGraph& g, std::span<const WindowView> views,
                                        std::span<const EpochRun> runs, Variant variant,
                                        DissimilaritySource source = DissimilaritySource::RawSnapshots);

/// Fills the error columns of `incremental_rows` from the two runs.
void attach_errors(std::span<EpochMetrics> incremental_rows, std::span<const EpochRun> incremental,
                   std::span<const EpochRun> baseline, std::span<const WindowView> views);

inline constexpr const char* kCsvHeader =
    "epoch,variant,active_nodes,active_edges,activated_nodes,iterations,total_messages,errors,"
    "max_error_magnitude,jaccard_dissimilarity,coreness_changes";

/// Header plus one line per row, in the given order. Throws IoError if the stream fails.
void write_csv(std::span<const EpochMetrics> rows, std::ostream& out);

struct VariantSummary {
  std::size_t epochs = 0;
  std::size_t active_epochs = 0;  // epochs with at least one iteration
  double mean_activated = 0;
  double mean_messages = 0;
  double mean_iterations = 0;         // over all epochs
  double mean_iterations_active = 0;  // over active epochs only
};

struct RunSummary {
  std::optional<VariantSummary> incremental;
  std::optional<VariantSummary> baseline;
  std::optional<double> mean_errors;         // per epoch, incremental vs baseline
  std::optional<double> mean_error_percent;  // per-epoch errors / active nodes, averaged, in percent
  std::optional<std::size_t> max_error_magnitude;

  /// Incremental / baseline ratio of per-epoch means; nullopt unless both variants ran.
  std::optional<double> activated_ratio() const;
  std::optional<double> message_ratio() const;
  std::optional<double> iteration_ratio() const;
};

RunSummary summarize(std::span<const EpochMetrics> rows);

/// Human-readable table: activated nodes, messages and iterations with
/// incremental / baseline / ratio columns, then average errors per epoch.
void write_summary(const RunSummary& summary, std::ostream& out);

}  // namespace tempcore
