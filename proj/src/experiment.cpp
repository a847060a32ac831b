#include "tempcore/experiment.hpp"

namespace tempcore {

ExperimentResult run_experiment(const TemporalGraph& g, const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.views = compute_views(g, cfg.window);

  const auto pass = [&](Variant variant) {
    auto options = cfg.simulation;
    options.protocol.variant = variant;
    return run_simulation(result.views, g.num_nodes(), options);
  };

  std::vector<EpochMetrics> baseline_rows;
  std::vector<EpochMetrics> incremental_rows;
  if (cfg.variants != VariantSelection::Incremental) {
    result.baseline = pass(Variant::BaselineFullReset);
    baseline_rows = epoch_metrics(g, result.views, result.baseline, Variant::BaselineFullReset, cfg.dissimilarity);
  }
  if (cfg.variants != VariantSelection::Baseline) {
    result.incremental = pass(Variant::Incremental);
    incremental_rows = epoch_metrics(g, result.views, result.incremental, Variant::Incremental, cfg.dissimilarity);
  }
  if (cfg.variants == VariantSelection::Both) {
    attach_errors(incremental_rows, result.incremental, result.baseline, result.views);
  }

  result.rows.reserve(baseline_rows.size() + incremental_rows.size());
  for (std::size_t i = 0; i < result.views.size(); ++i) {
    if (!baseline_rows.empty()) result.rows.push_back(baseline_rows[i]);
    if (!incremental_rows.empty()) result.rows.push_back(incremental_rows[i]);
  }
  return result;
}

}  // namespace tempcore
