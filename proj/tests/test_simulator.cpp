#include <doctest.h>

#include <map>
#include <random>
#include <tuple>

#include "support/example_graph.hpp"
#include "tempcore/errors.hpp"
#include "tempcore/simulator.hpp"
#include "tempcore/synthetic.hpp"

using namespace tempcore;

namespace {

SimulationOptions options_for(Variant v) {
  SimulationOptions o;
  o.protocol.variant = v;
  return o;
}

using Broadcasts = std::map<NodeId, std::vector<std::pair<int, Core>>>;  // node -> (iteration, value)

}  // namespace

TEST_CASE("worked example, both epochs") {
  using namespace example;
  const auto g = two_epoch_graph();
  std::map<Epoch, Broadcasts> sent;
  auto opts = options_for(Variant::Incremental);
  opts.on_broadcast = [&](const BroadcastEvent& e) { sent[e.epoch][e.sender].push_back({e.iteration, e.value}); };

  const auto runs = run_simulation(g, snapshot_only(), opts);
  REQUIRE(runs.size() == 2);

  CHECK(runs[0].iterations == 1);
  CHECK(sent[1] == Broadcasts{{A, {{1, 2}}}, {B, {{1, 2}}}, {C, {{1, 2}}}});

  const auto& e2 = sent[2];
  CHECK(e2.at(A) == std::vector<std::pair<int, Core>>{{1, 2}});
  CHECK(e2.at(C) == std::vector<std::pair<int, Core>>{{1, 2}});
  CHECK(e2.at(D) == std::vector<std::pair<int, Core>>{{1, 2}});
  CHECK(e2.at(B) == std::vector<std::pair<int, Core>>{{1, 5}, {3, 3}});
  for (NodeId x : {X1, X2, X3}) CHECK(e2.at(x) == std::vector<std::pair<int, Core>>{{1, 3}});
  CHECK(runs[1].iterations == 3);
  CHECK(runs[1].messages_per_iteration == std::vector<std::size_t>{7, 0, 1});
  CHECK(runs[1].final_coreness.values == std::vector<Core>{2, 3, 2, 2, 3, 3, 3});

  const auto baseline = run_simulation(g, snapshot_only(), options_for(Variant::BaselineFullReset));
  CHECK(baseline[1].final_coreness == runs[1].final_coreness);
  CHECK(baseline[1].iterations == 2);
}

TEST_CASE("single edge converges after one counted iteration") {
  const auto g = TemporalGraph::from_edges(2, {{0, 1, 1}});
  for (Variant v : {Variant::Incremental, Variant::BaselineFullReset}) {
    const auto runs = run_simulation(g, {1, Aggregation::union_any()}, options_for(v));
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].iterations == 1);
    CHECK(runs[0].messages_per_iteration == std::vector<std::size_t>{2});
    CHECK(runs[0].deliveries == 2);
    CHECK(runs[0].activated == std::vector<NodeId>{0, 1});
    CHECK(runs[0].final_coreness.values == std::vector<Core>{1, 1});
  }
}

TEST_CASE("repeating an epoch is quiescent for the incremental variant") {
  const auto g = generate_synthetic({80, 1, 0.06, 0.0, 4});
  const auto view = window_view(g, 1, {1, Aggregation::union_any()});

  RoundEngine inc(g.num_nodes(), options_for(Variant::Incremental));
  const auto first = inc.run_epoch(view, diff_views(WindowView::empty(g.num_nodes()), view));
  const auto again = inc.run_epoch(view, diff_views(view, view));
  CHECK(again.iterations == 0);
  CHECK(again.total_messages() == 0);
  CHECK(again.activated.empty());
  CHECK(again.final_coreness == first.final_coreness);

  RoundEngine base(g.num_nodes(), options_for(Variant::BaselineFullReset));
  base.run_epoch(view, diff_views(WindowView::empty(g.num_nodes()), view));
  const auto reset = base.run_epoch(view, diff_views(view, view));
  CHECK(reset.activated == view.active_nodes());
  CHECK(reset.final_coreness == first.final_coreness);
}

TEST_CASE("baseline variant reproduces peeling on every epoch") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 24; ++trial) {
    const auto g = generate_synthetic({40 + rng() % 60, 8, 0.08, 0.1 * (trial % 6), rng()});
    const Aggregation aggs[] = {Aggregation::intersection(), Aggregation::union_any(), Aggregation::union_h(2)};
    const WindowConfig cfg{3, aggs[trial % 3]};
    const auto runs = run_simulation(g, cfg, options_for(Variant::BaselineFullReset));
    for (const auto& run : runs) CHECK(run.final_coreness == peel(window_view(g, run.epoch, cfg)));
  }
}

TEST_CASE("single-epoch runs agree between variants") {
  using namespace example;
  const auto tri = TemporalGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const WindowConfig cfg{1, Aggregation::union_any()};
  CHECK(run_simulation(tri, cfg, options_for(Variant::Incremental)) ==
        run_simulation(tri, cfg, options_for(Variant::BaselineFullReset)));

  // With decreases the deferral changes timing, not the outcome.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = generate_synthetic({50, 1, 0.08, 0.0, rng()});
    const auto inc = run_simulation(g, cfg, options_for(Variant::Incremental));
    const auto base = run_simulation(g, cfg, options_for(Variant::BaselineFullReset));
    CHECK(inc[0].final_coreness == base[0].final_coreness);
    CHECK(inc[0].activated == base[0].activated);
  }
}

TEST_CASE("engine bookkeeping invariants") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 16; ++trial) {
    const auto g = generate_synthetic({60, 10, 0.07, 0.3, rng()});
    const WindowConfig cfg{1 + trial % 5, trial % 2 ? Aggregation::union_any() : Aggregation::intersection()};
    const Variant variant = trial % 4 < 2 ? Variant::Incremental : Variant::BaselineFullReset;

    auto opts = options_for(variant);
    std::size_t expected_deliveries = 0;
    WindowView current;
    opts.on_broadcast = [&](const BroadcastEvent& e) { expected_deliveries += current.degree(e.sender); };
    RoundEngine engine(g.num_nodes(), opts);

    WindowView prev = WindowView::empty(g.num_nodes());
    for (Epoch t = 1; t <= g.lifespan(); ++t) {
      current = window_view(g, t, cfg);
      expected_deliveries = 0;
      const auto run = engine.run_epoch(current, diff_views(prev, current));

      CHECK(run.deliveries == expected_deliveries);
      CHECK(run.messages_per_iteration.size() == static_cast<std::size_t>(run.iterations));
      for (NodeId u : run.activated) CHECK(current.present(u));
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        const auto& s = engine.state(u);
        CHECK(s.has_value() == current.present(u));
        if (!s) {
          CHECK(run.final_coreness[u] == 0);
          continue;
        }
        CHECK(s->core <= current.degree(u));
        CHECK_FALSE(s->changed);
        CHECK_FALSE(s->delay_pending);
        // Every neighbor holds the value this node last announced.
        for (NodeId v : current.neighbors(u)) CHECK(engine.state(v)->find(u)->value == s->core);
      }
      prev = current;
    }
  }
}

TEST_CASE("nodes that become isolated are retired") {
  const auto g = TemporalGraph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 1, 2}, {1, 2, 2}});
  RoundEngine engine(4, options_for(Variant::Incremental));
  const auto v1 = window_view(g, 1, {1, Aggregation::union_any()});
  const auto v2 = window_view(g, 2, {1, Aggregation::union_any()});
  engine.run_epoch(v1, diff_views(WindowView::empty(4), v1));
  CHECK(engine.state(3).has_value());
  const auto run = engine.run_epoch(v2, diff_views(v1, v2));
  CHECK_FALSE(engine.state(3).has_value());
  CHECK(run.final_coreness[3] == 0);
  CHECK(std::find(run.activated.begin(), run.activated.end(), 3) == run.activated.end());
}

TEST_CASE("iteration cap raises a non-convergence error") {
  const auto g = TemporalGraph::from_edges(3, {{0, 1, 1}, {0, 1, 2}, {1, 2, 2}});
  auto opts = options_for(Variant::Incremental);
  opts.limits.max_iterations = 1;
  try {
    run_simulation(g, {1, Aggregation::union_any()}, opts);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.epoch() == 2);
  }
}

TEST_CASE("a stale delta is a protocol error") {
  const auto g = TemporalGraph::from_edges(3, {{0, 1, 1}, {0, 1, 2}, {0, 2, 2}});
  RoundEngine engine(3, options_for(Variant::Incremental));
  const auto v1 = window_view(g, 1, {1, Aggregation::union_any()});
  const auto v2 = window_view(g, 2, {1, Aggregation::union_any()});
  engine.run_epoch(v1, diff_views(WindowView::empty(3), v1));
  CHECK_THROWS_AS(engine.run_epoch(v2, diff_views(v2, v2)), ProtocolError);
}

TEST_CASE("runs are deterministic and parallel mode matches the sequential reference") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = generate_synthetic({150 + rng() % 100, 10, 0.04, 0.25, rng()});
    const WindowConfig cfg{5, Aggregation::union_h(2)};
    for (Variant v : {Variant::Incremental, Variant::BaselineFullReset}) {
      auto seq = options_for(v);
      auto par = seq;
      par.mode = ExecutionMode::Parallel;
      par.num_threads = 4;
      const auto reference = run_simulation(g, cfg, seq);
      CHECK(run_simulation(g, cfg, seq) == reference);
      CHECK(run_simulation(g, cfg, par) == reference);
    }
  }
}

TEST_CASE("precomputed views give the same trace as lazy evaluation") {
  const auto g = generate_synthetic({70, 9, 0.06, 0.3, 9});
  const WindowConfig cfg{3, Aggregation::intersection()};
  const auto views = compute_views(g, cfg);
  const auto opts = options_for(Variant::Incremental);
  CHECK(run_simulation(views, g.num_nodes(), opts) == run_simulation(g, cfg, opts));
}

TEST_CASE("trace callback reports each counted iteration") {
  using namespace example;
  std::vector<std::tuple<Epoch, int, std::size_t, std::size_t>> lines;
  auto opts = options_for(Variant::Incremental);
  opts.on_iteration = [&](const IterationTrace& t) {
    lines.emplace_back(t.epoch, t.iteration, t.messages, t.activated_so_far);
  };
  run_simulation(two_epoch_graph(), snapshot_only(), opts);
  CHECK(lines == std::vector<std::tuple<Epoch, int, std::size_t, std::size_t>>{
                     {1, 1, 3, 3}, {2, 1, 7, 7}, {2, 2, 0, 7}, {2, 3, 1, 7}});
}
