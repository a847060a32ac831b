#include "tempcore/simulator.hpp"

#include <algorithm>
#include <exception>
#include <iterator>
#include <numeric>

#ifdef TEMPCORE_HAVE_OPENMP
#include <omp.h>
#endif

#include "tempcore/errors.hpp"

namespace tempcore {

std::size_t EpochRun::total_messages() const {
  return std::accumulate(messages_per_iteration.begin(), messages_per_iteration.end(), std::size_t{0});
}

namespace {

/// Runs body(i) for i in [0, n). Handlers may throw; the first exception by
/// index is rethrown after the loop so both modes report the same error.
template <class Body>
void for_each_index(std::size_t n, bool parallel, int num_threads, Body&& body) {
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#ifdef TEMPCORE_HAVE_OPENMP
  const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  (void)num_threads;
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

RoundEngine::RoundEngine(std::size_t num_nodes, SimulationOptions options)
    : options_(std::move(options)), states_(num_nodes), inbox_(num_nodes) {}

void RoundEngine::begin_epoch(const WindowView& view, const ViewDelta& delta) {
  if (view.num_nodes() != states_.size()) throw DomainError("view does not match the node universe");

  for (NodeId u : alive_) {
    if (!view.present(u)) states_[u].reset();
  }
  alive_ = view.active_nodes();

  const NodeDelta none{};
  for_each_index(alive_.size(), parallel(), options_.num_threads, [&](std::size_t i) {
    const NodeId u = alive_[i];
    auto& slot = states_[u];
    if (!slot) {
      slot = on_init(u, view);
      return;
    }
    const NodeDelta* d = delta.find(u);
    on_epoch_change(*slot, d ? *d : none, view, options_.protocol);
  });
}

EpochRun RoundEngine::run_epoch(const WindowView& view, const ViewDelta& delta) {
  begin_epoch(view, delta);

  EpochRun run;
  run.epoch = view.epoch();
  const std::size_t cap = options_.limits.max_iterations.value_or(10 * alive_.size());

  std::vector<NodeId> pending;
  for (NodeId u : alive_) {
    if (states_[u]->changed || states_[u]->delay_pending) pending.push_back(u);
  }

  std::vector<char> activated(states_.size(), 0);
  std::size_t activated_count = 0;
  std::vector<std::optional<Core>> outbox;
  std::vector<char> waited;
  std::vector<Message> senders;
  std::vector<NodeId> recipients;

  while (true) {
    // Emit: every pending node decides independently; outbox is per slot.
    outbox.assign(pending.size(), std::nullopt);
    waited.assign(pending.size(), 0);
    for_each_index(pending.size(), parallel(), options_.num_threads, [&](std::size_t i) {
      auto& s = *states_[pending[i]];
      waited[i] = s.delay_pending ? 1 : 0;
      outbox[i] = emit_phase(s, options_.protocol);
    });

    senders.clear();
    bool any_wait = false;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (outbox[i]) senders.push_back({pending[i], *outbox[i]});
      any_wait = any_wait || waited[i];
    }
    if (senders.empty() && !any_wait) break;

    ++run.iterations;
    if (static_cast<std::size_t>(run.iterations) > cap) throw NonConvergenceError(view.epoch(), cap);
    run.messages_per_iteration.push_back(senders.size());

    // Deliver in ascending sender order so every inbox is sorted by sender.
    recipients.clear();
    for (const auto& m : senders) {
      if (!activated[m.sender]) {
        activated[m.sender] = 1;
        ++activated_count;
      }
      if (options_.on_broadcast) options_.on_broadcast({view.epoch(), run.iterations, m.sender, m.estimate});
      for (NodeId v : view.neighbors(m.sender)) {
        if (inbox_[v].empty()) recipients.push_back(v);
        inbox_[v].push_back(m);
      }
      run.deliveries += view.degree(m.sender);
    }
    std::sort(recipients.begin(), recipients.end());

    for_each_index(recipients.size(), parallel(), options_.num_threads, [&](std::size_t i) {
      const NodeId v = recipients[i];
      on_receive(*states_[v], inbox_[v], options_.protocol);
    });

    std::vector<NodeId> next;
    next.reserve(pending.size() + recipients.size());
    auto still_pending = [this](NodeId u) { return states_[u]->changed || states_[u]->delay_pending; };
    std::vector<NodeId> carried;
    std::copy_if(pending.begin(), pending.end(), std::back_inserter(carried), still_pending);
    std::vector<NodeId> triggered;
    for (NodeId v : recipients) {
      inbox_[v].clear();
      if (still_pending(v)) triggered.push_back(v);
    }
    std::set_union(carried.begin(), carried.end(), triggered.begin(), triggered.end(),
                   std::back_inserter(next));
    pending = std::move(next);

    if (options_.on_iteration) {
      options_.on_iteration({view.epoch(), run.iterations, senders.size(), activated_count});
    }
  }

  run.activated.reserve(activated_count);
  for (NodeId u : alive_) {
    if (activated[u]) run.activated.push_back(u);
  }
  run.final_coreness = CorenessMap(states_.size());
  for (NodeId u : alive_) run.final_coreness[u] = states_[u]->core;
  return run;
}

std::vector<EpochRun> run_simulation(const TemporalGraph& g, const WindowConfig& cfg,
                                     const SimulationOptions& options) {
  cfg.validate();
  RoundEngine engine(g.num_nodes(), options);
  std::vector<EpochRun> runs;
  runs.reserve(static_cast<std::size_t>(g.lifespan()));
  WindowView prev = WindowView::empty(g.num_nodes());
  for (Epoch t = 1; t <= g.lifespan(); ++t) {
    WindowView cur = window_view(g, t, cfg);
    runs.push_back(engine.run_epoch(cur, diff_views(prev, cur)));
    prev = std::move(cur);
  }
  return runs;
}

std::vector<EpochRun> run_simulation(std::span<const WindowView> views, std::size_t num_nodes,
                                     const SimulationOptions& options) {
  RoundEngine engine(num_nodes, options);
  std::vector<EpochRun> runs;
  runs.reserve(views.size());
  const WindowView empty = WindowView::empty(num_nodes);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const WindowView& prev = i == 0 ? empty : views[i - 1];
    runs.push_back(engine.run_epoch(views[i], diff_views(prev, views[i])));
  }
  return runs;
}

}  // namespace tempcore
