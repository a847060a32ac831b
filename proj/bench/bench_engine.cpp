// Serial reference vs OpenMP round engine on synthetic graphs.

#include <benchmark/benchmark.h>

#include <map>

#include "tempcore/simulator.hpp"
#include "tempcore/synthetic.hpp"

using namespace tempcore;

namespace {

const TemporalGraph& graph_for(std::size_t nodes) {
  static std::map<std::size_t, TemporalGraph> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    SyntheticParams p{nodes, 20, 8.0 / static_cast<double>(nodes - 1), 0.2, 42};
    it = cache.emplace(nodes, generate_synthetic(p)).first;
  }
  return it->second;
}

const WindowConfig kWindow{5, Aggregation::union_h(2)};

void run(benchmark::State& state, Variant variant, ExecutionMode mode) {
  const auto& g = graph_for(static_cast<std::size_t>(state.range(0)));
  const auto views = compute_views(g, kWindow);
  SimulationOptions opts;
  opts.protocol.variant = variant;
  opts.mode = mode;
  std::size_t messages = 0;
  for (auto _ : state) {
    const auto runs = run_simulation(views, g.num_nodes(), opts);
    for (const auto& r : runs) messages += r.total_messages();
    benchmark::DoNotOptimize(messages);
  }
  state.counters["epochs/s"] = benchmark::Counter(static_cast<double>(views.size() * state.iterations()),
                                                  benchmark::Counter::kIsRate);
}

void BM_IncrementalSerial(benchmark::State& s) { run(s, Variant::Incremental, ExecutionMode::Sequential); }
void BM_IncrementalParallel(benchmark::State& s) { run(s, Variant::Incremental, ExecutionMode::Parallel); }
void BM_BaselineSerial(benchmark::State& s) { run(s, Variant::BaselineFullReset, ExecutionMode::Sequential); }
void BM_BaselineParallel(benchmark::State& s) { run(s, Variant::BaselineFullReset, ExecutionMode::Parallel); }

void BM_ComputeViews(benchmark::State& state) {
  const auto& g = graph_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_views(g, kWindow));
}

}  // namespace

BENCHMARK(BM_IncrementalSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncrementalParallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BaselineSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BaselineParallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeViews)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
