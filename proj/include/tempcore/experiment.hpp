#pragma once

#include <vector>

#include "tempcore/metrics.hpp"
#include "tempcore/simulator.hpp"
#include "tempcore/temporal_graph.hpp"

namespace tempcore {

enum class VariantSelection { Incremental, Baseline, Both };

struct ExperimentConfig {
  WindowConfig window;
  VariantSelection variants = VariantSelection::Both;
  SimulationOptions simulation;  // protocol.variant is overridden per pass
  DissimilaritySource dissimilarity = DissimilaritySource::RawSnapshots;
};

struct ExperimentResult {
  std::vector<WindowView> views;
  std::vector<EpochRun> baseline;     // empty unless the baseline ran
  std::vector<EpochRun> incremental;  // empty unless the incremental variant ran
  std::vector<EpochMetrics> rows;     // ordered by epoch, baseline row first
};

/// Computes the views once, runs the baseline pass and then the incremental
/// pass over them, and assembles per-epoch metrics. With both variants the
/// incremental rows carry errors against the baseline.
ExperimentResult run_experiment(const TemporalGraph& g, const ExperimentConfig& cfg);

}  // namespace tempcore
