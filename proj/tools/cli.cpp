#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/ostream.h>

#include "tempcore/errors.hpp"
#include "tempcore/experiment.hpp"
#include "tempcore/synthetic.hpp"

namespace tempcore::cli {

namespace {

struct RunConfig {
  std::string input;
  bool synthetic = false;
  std::optional<std::int64_t> epoch_seconds;
  bool pre_bucketed = false;
  int memory = 5;
  std::string aggregation = "intersection";
  std::optional<int> h;
  std::string variant = "both";
  std::string output;
  std::optional<std::size_t> max_iterations;
  bool no_suppression = false;
  bool trace = false;
  bool parallel = false;
  int threads = 0;
  std::string dissimilarity = "raw";
  SyntheticParams synthetic_params;
};

VariantSelection parse_variants(const std::string& name) {
  if (name == "incremental") return VariantSelection::Incremental;
  if (name == "baseline") return VariantSelection::Baseline;
  return VariantSelection::Both;
}

TemporalGraph load_graph(const RunConfig& rc) {
  if (rc.synthetic) return generate_synthetic(rc.synthetic_params);
  if (rc.pre_bucketed) return load_edge_list(rc.input, ExplicitEpochs{});
  return load_edge_list(rc.input, FixedDuration{*rc.epoch_seconds});
}

int execute(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const TemporalGraph graph = load_graph(rc);

  ExperimentConfig cfg;
  cfg.window.memory_size = rc.memory;
  // "half" of the memory size unless told otherwise
  cfg.window.aggregation = parse_aggregation(rc.aggregation, rc.h.value_or(std::max(1, rc.memory / 2)));
  cfg.window.validate();
  cfg.variants = parse_variants(rc.variant);
  cfg.dissimilarity =
      rc.dissimilarity == "window" ? DissimilaritySource::WindowViews : DissimilaritySource::RawSnapshots;
  cfg.simulation.protocol.suppress_redundant = !rc.no_suppression;
  cfg.simulation.limits.max_iterations = rc.max_iterations;
  cfg.simulation.mode = rc.parallel ? ExecutionMode::Parallel : ExecutionMode::Sequential;
  cfg.simulation.num_threads = rc.threads;
  if (rc.trace) {
    cfg.simulation.on_iteration = [&err](const IterationTrace& t) {
      fmt::print(err, "trace epoch={} iteration={} messages={} activated={}\n", t.epoch, t.iteration, t.messages,
                 t.activated_so_far);
    };
  }

  const ExperimentResult result = run_experiment(graph, cfg);
  const RunSummary summary = summarize(result.rows);

  std::ostream* summary_out = &out;
  if (rc.output.empty()) {
    write_csv(result.rows, out);
    summary_out = &err;
  } else {
    std::ofstream file(rc.output, std::ios::binary);
    if (!file) throw IoError("cannot open " + rc.output + " for writing");
    write_csv(result.rows, file);
  }
  fmt::print(*summary_out, "nodes {} | epochs {} | memory {} | aggregation {}\n", graph.num_nodes(),
             graph.lifespan(), cfg.window.memory_size, to_string(cfg.window.aggregation));
  write_summary(summary, *summary_out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Decentralized k-core maintenance on temporal graphs: incremental protocol vs full-reset baseline"};
  app.set_help_flag("--help", "Print this help message and exit");

  auto* input = app.add_option("--input", rc.input, "Edge list with lines \"u v timestamp\"");
  auto* synthetic = app.add_flag("--synthetic", rc.synthetic, "Generate a synthetic temporal graph instead");
  input->excludes(synthetic);
  auto* seconds = app.add_option("--epoch-seconds", rc.epoch_seconds, "Epoch length in seconds")
                      ->check(CLI::PositiveNumber);
  auto* bucketed = app.add_flag("--pre-bucketed", rc.pre_bucketed, "Third column is already an epoch index");
  seconds->excludes(bucketed);

  app.add_option("--memory", rc.memory, "Sliding window length in epochs")->check(CLI::PositiveNumber);
  app.add_option("--agg", rc.aggregation, "Aggregation function")
      ->check(CLI::IsMember({"intersection", "union", "union-h"}));
  app.add_option("--h", rc.h, "Minimum distinct epochs for union-h (default: memory / 2)")
      ->check(CLI::PositiveNumber);
  app.add_option("--variant", rc.variant, "Which protocol(s) to run")
      ->check(CLI::IsMember({"incremental", "baseline", "both"}));
  app.add_option("--output", rc.output, "CSV destination (default: stdout, summary goes to stderr)");
  app.add_option("--max-iterations", rc.max_iterations, "Per-epoch iteration cap (default: 10 x active nodes)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-suppression", rc.no_suppression, "Re-send unchanged values after a lower-then-restore");
  app.add_flag("--trace", rc.trace, "Print one line per iteration to stderr");
  app.add_flag("--parallel", rc.parallel, "Run node handlers with OpenMP");
  app.add_option("--threads", rc.threads, "OpenMP threads for --parallel (default: runtime)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--dissimilarity", rc.dissimilarity, "Edge sets compared by the Jaccard column")
      ->check(CLI::IsMember({"raw", "window"}));

  auto& sp = rc.synthetic_params;
  app.add_option("--seed", sp.seed, "Synthetic RNG seed");
  app.add_option("--nodes", sp.nodes, "Synthetic node count");
  app.add_option("--epochs", sp.epochs, "Synthetic epoch count");
  app.add_option("--edge-prob", sp.edge_prob, "Synthetic edge probability");
  app.add_option("--churn", sp.churn_rate, "Fraction of edges rewired per epoch");

  try {
    app.parse(argc, argv);
    if (!rc.synthetic && rc.input.empty()) throw CLI::ValidationError("one of --input or --synthetic is required");
    if (!rc.synthetic && !rc.epoch_seconds && !rc.pre_bucketed) {
      throw CLI::ValidationError("--input needs --epoch-seconds or --pre-bucketed");
    }
    if (rc.h && rc.aggregation != "union-h") throw CLI::ValidationError("--h only applies to --agg union-h");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    fmt::print(err, "{}", app.help());
    return kUsage;
  }

  try {
    return execute(rc, out, err);
  } catch (const NonConvergenceError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kNonConvergence;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIo;
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}: {}\n", rc.input, e.what());
    return kIo;
  } catch (const EmptyInputError& e) {
    fmt::print(err, "error: {}: {}\n", rc.input, e.what());
    return kIo;
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }
}

}  // namespace tempcore::cli
