#include <doctest.h>

#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "tempcore/errors.hpp"
#include "tempcore/experiment.hpp"
#include "tempcore/metrics.hpp"
#include "tempcore/synthetic.hpp"

using namespace tempcore;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("compare_coreness") {
  const WindowView view(1, 4, {{0, 1}, {1, 2}});  // node 3 absent
  CorenessMap base(std::vector<Core>{1, 1, 1, 0});

  SUBCASE("identical") {
    const auto r = compare_coreness(base, base, view);
    CHECK(r.errors == 0);
    CHECK(r.max_error_magnitude == 0);
  }
  SUBCASE("off by one") {
    CorenessMap inc(std::vector<Core>{1, 2, 1, 0});
    const auto r = compare_coreness(inc, base, view);
    CHECK(r.errors == 1);
    CHECK(r.max_error_magnitude == 1);
  }
  SUBCASE("magnitude two in either direction") {
    CorenessMap inc(std::vector<Core>{3, 1, 0, 0});
    const auto r = compare_coreness(inc, base, view);
    CHECK(r.errors == 2);
    CHECK(r.max_error_magnitude == 2);
  }
  SUBCASE("absent nodes never count") {
    CorenessMap inc(std::vector<Core>{1, 1, 1, 5});
    CHECK(compare_coreness(inc, base, view).errors == 0);
  }
  SUBCASE("domain mismatch") {
    CHECK_THROWS_AS(compare_coreness(CorenessMap(3), base, view), HarnessError);
  }
}

TEST_CASE("one error among 986 nodes") {
  std::vector<Edge> ring;
  for (NodeId u = 0; u < 986; ++u) ring.push_back({std::min<NodeId>(u, (u + 1) % 986), std::max<NodeId>(u, (u + 1) % 986)});
  std::sort(ring.begin(), ring.end());
  const WindowView view(1, 986, ring);
  CorenessMap base(std::vector<Core>(986, 2));
  auto inc = base;
  inc[400] = 1;
  const auto r = compare_coreness(inc, base, view);
  CHECK(r.errors == 1);
  CHECK(r.max_error_magnitude == 1);
  CHECK(100.0 * r.errors / view.active_nodes().size() == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("jaccard dissimilarity") {
  const std::vector<Edge> abc{{0, 1}, {1, 2}, {2, 3}};
  const std::vector<Edge> abe{{0, 1}, {1, 2}, {2, 4}};
  const std::vector<Edge> other{{5, 6}};
  CHECK(jaccard_dissimilarity(abc, abc) == 0.0);
  CHECK(jaccard_dissimilarity(abc, other) == 1.0);
  CHECK(jaccard_dissimilarity(abc, abe) == doctest::Approx(0.5));
  CHECK(jaccard_dissimilarity({}, {}) == 1.0);
}

TEST_CASE("jaccard dissimilarity is symmetric, bounded and matches set arithmetic") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<oracle::Pair> a, b;
    for (int i = 0; i < 15; ++i) {
      const NodeId u = rng() % 8, v = rng() % 8;
      if (u == v) continue;
      (rng() % 2 ? a : b).insert({std::min(u, v), std::max(u, v)});
      if (rng() % 3 == 0) a.insert({std::min(u, v), std::max(u, v)}), b.insert({std::min(u, v), std::max(u, v)});
    }
    std::vector<Edge> ea, eb;
    for (auto [u, v] : a) ea.push_back({u, v});
    for (auto [u, v] : b) eb.push_back({u, v});
    const double d = jaccard_dissimilarity(ea, eb);
    CHECK(d == doctest::Approx(oracle::jaccard_dissimilarity(a, b)));
    CHECK(d == jaccard_dissimilarity(eb, ea));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    if (!a.empty() || !b.empty()) CHECK((d == 0.0) == (a == b));
  }
}

TEST_CASE("coreness change count") {
  CorenessMap prev(std::vector<Core>{2, 2, 1, 0, 3, 3, 1, 1, 2, 2});
  CHECK(coreness_change_count(prev, prev) == 0);
  auto cur = prev;
  cur[0] = 0;  // left the graph
  CHECK(coreness_change_count(prev, cur) == 1);
  cur[3] = 1;
  cur[9] = 3;
  CHECK(coreness_change_count(prev, cur) == 3);
  CHECK(coreness_change_count(CorenessMap(std::vector<Core>{1, 1}), CorenessMap(std::vector<Core>{1, 1, 2})) == 1);
}

TEST_CASE("epoch metrics rows") {
  const auto g = generate_synthetic({60, 6, 0.08, 0.3, 21});
  ExperimentConfig cfg;
  cfg.window = {2, Aggregation::union_any()};
  const auto result = run_experiment(g, cfg);
  REQUIRE(result.rows.size() == 12);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    CHECK(row.epoch == static_cast<Epoch>(i / 2 + 1));
    CHECK(row.variant == (i % 2 == 0 ? Variant::BaselineFullReset : Variant::Incremental));
    CHECK(row.activated_nodes <= row.active_nodes);
    CHECK(row.errors.has_value() == (row.variant == Variant::Incremental));
    if (row.errors) CHECK(*row.errors <= row.active_nodes);
    const auto t = static_cast<std::size_t>(row.epoch);
    const double expected = t == 1 ? 1.0
                                   : oracle::jaccard_dissimilarity(oracle::window_edges(g, row.epoch - 1, {1, Aggregation::union_any()}),
                                                                   oracle::window_edges(g, row.epoch, {1, Aggregation::union_any()}));
    CHECK(row.jaccard_dissimilarity == doctest::Approx(expected));
  }
  CHECK(result.rows[0].coreness_changes == result.rows[0].active_nodes);
  CHECK(result.rows[0].jaccard_dissimilarity == 1.0);

  SUBCASE("window-view dissimilarity source") {
    cfg.dissimilarity = DissimilaritySource::WindowViews;
    const auto windowed = run_experiment(g, cfg);
    for (const auto& row : windowed.rows) {
      if (row.epoch == 1) continue;
      const auto& views = windowed.views;
      const auto t = static_cast<std::size_t>(row.epoch);
      CHECK(row.jaccard_dissimilarity ==
            doctest::Approx(oracle::jaccard_dissimilarity(oracle::edge_set(views[t - 2]), oracle::edge_set(views[t - 1]))));
    }
  }
}

TEST_CASE("errors stay at zero while nothing changes") {
  // Churn 0: every epoch equals the first, so no epoch after the first can introduce errors.
  const auto g = generate_synthetic({90, 8, 0.05, 0.0, 3});
  ExperimentConfig cfg;
  cfg.window = {3, Aggregation::intersection()};
  const auto result = run_experiment(g, cfg);
  for (const auto& row : result.rows) {
    if (row.variant == Variant::Incremental) CHECK(*row.errors == 0);
  }
}

TEST_CASE("write_csv") {
  SUBCASE("empty run writes the header only") {
    std::ostringstream out;
    write_csv({}, out);
    CHECK(out.str() == std::string(kCsvHeader) + "\n");
  }
  SUBCASE("fixed column order and formatting") {
    std::vector<EpochMetrics> rows(4);
    for (int i = 0; i < 4; ++i) {
      rows[i].epoch = 1 + i / 2;
      rows[i].variant = i % 2 ? Variant::Incremental : Variant::BaselineFullReset;
      rows[i].active_nodes = 10;
      rows[i].active_edges = 12;
      rows[i].activated_nodes = 4 + i;
      rows[i].iterations = 3;
      rows[i].total_messages = 7;
      rows[i].jaccard_dissimilarity = i < 2 ? 1.0 : 1.0 / 3.0;
      rows[i].coreness_changes = 2;
      if (i % 2) {
        rows[i].errors = 1;
        rows[i].max_error_magnitude = 1;
      }
    }
    std::ostringstream out;
    write_csv(rows, out);
    const auto parsed = parse_csv(out.str());
    REQUIRE(parsed.size() == 5);
    CHECK(parsed[1] == std::vector<std::string>{"1", "baseline", "10", "12", "4", "3", "7", "", "", "1.000000", "2"});
    CHECK(parsed[4] ==
          std::vector<std::string>{"2", "incremental", "10", "12", "7", "3", "7", "1", "1", "0.333333", "2"});
    CHECK(out.str().find('\r') == std::string::npos);
  }
  SUBCASE("failing stream") {
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    CHECK_THROWS_AS(write_csv({}, out), IoError);
  }
}

TEST_CASE("summary ratios recomputed from the CSV alone") {
  const auto g = generate_synthetic({120, 12, 0.04, 0.3, 8});
  ExperimentConfig cfg;
  cfg.window = {5, Aggregation::union_h(2)};
  const auto result = run_experiment(g, cfg);
  const auto summary = summarize(result.rows);

  std::ostringstream out;
  write_csv(result.rows, out);
  const auto parsed = parse_csv(out.str());
  double sums[2][3] = {};
  double counts[2] = {};
  double errors = 0, percent = 0;
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    const auto& r = parsed[i];
    const int k = r[1] == "incremental" ? 0 : 1;
    counts[k] += 1;
    sums[k][0] += std::stod(r[4]);
    sums[k][1] += std::stod(r[6]);
    sums[k][2] += std::stod(r[5]);
    if (k == 0) {
      errors += std::stod(r[7]);
      percent += 100.0 * std::stod(r[7]) / std::stod(r[2]);
    }
  }
  REQUIRE(summary.incremental);
  REQUIRE(summary.baseline);
  CHECK(summary.incremental->mean_activated == doctest::Approx(sums[0][0] / counts[0]));
  CHECK(summary.baseline->mean_messages == doctest::Approx(sums[1][1] / counts[1]));
  CHECK(*summary.activated_ratio() == doctest::Approx((sums[0][0] / counts[0]) / (sums[1][0] / counts[1])));
  CHECK(*summary.message_ratio() == doctest::Approx((sums[0][1] / counts[0]) / (sums[1][1] / counts[1])));
  CHECK(*summary.iteration_ratio() == doctest::Approx((sums[0][2] / counts[0]) / (sums[1][2] / counts[1])));
  CHECK(*summary.mean_errors == doctest::Approx(errors / counts[0]));
  CHECK(*summary.mean_error_percent == doctest::Approx(percent / counts[0]));

  std::ostringstream text;
  write_summary(summary, text);
  CHECK(text.str().find("activated nodes") != std::string::npos);
  CHECK(text.str().find("avg errors per epoch") != std::string::npos);
}

TEST_CASE("single-variant summaries have no ratios") {
  const auto g = generate_synthetic({50, 4, 0.1, 0.2, 1});
  ExperimentConfig cfg;
  cfg.window = {2, Aggregation::intersection()};
  cfg.variants = VariantSelection::Incremental;
  const auto result = run_experiment(g, cfg);
  CHECK(result.rows.size() == 4);
  for (const auto& row : result.rows) CHECK_FALSE(row.errors);
  const auto s = summarize(result.rows);
  CHECK(s.incremental);
  CHECK_FALSE(s.baseline);
  CHECK_FALSE(s.activated_ratio());
  CHECK_FALSE(s.mean_errors);
}
