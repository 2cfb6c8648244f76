#include "growelim/naive.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

namespace growelim {

namespace {

struct Best {
  TouchTime t = kNever;
  Index j = kNoIndex;
};

inline bool better(const Best& a, const Best& b) {
  return a.t < b.t || (a.t == b.t && a.j < b.j);
}

// Parallel region setup dominates for short prefixes.
constexpr std::int64_t kParallelThreshold = 4096;

}  // namespace

#pragma omp declare reduction(best_min : Best : omp_out = better(omp_in, omp_out) ? omp_in : omp_out) \
    initializer(omp_priv = Best{})

EliminationSchedule solve_naive_serial(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.size();
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);
  for (std::size_t i = 1; i < n; ++i) {
    Best best;
    for (std::size_t j = 0; j < i; ++j) {
      const TouchTime tij =
          detail::touch_unchecked(inst, static_cast<Index>(i), static_cast<Index>(j));
      if (tij <= t[j] && better({tij, static_cast<Index>(j)}, best))
        best = {tij, static_cast<Index>(j)};
    }
    t[i] = best.t;
    by[i] = best.j;
  }
  return make_schedule(t, by);
}

EliminationSchedule solve_naive(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.size();
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);
  const TouchTime* times = t.data();
  for (std::size_t i = 1; i < n; ++i) {
    Best best;
    const std::int64_t limit = static_cast<std::int64_t>(i);
    const Index vi = static_cast<Index>(i);
#pragma omp parallel for reduction(best_min : best) if (limit >= kParallelThreshold)
    for (std::int64_t j = 0; j < limit; ++j) {
      const Index vj = static_cast<Index>(j);
      const TouchTime tij = detail::touch_unchecked(inst, vi, vj);
      if (tij <= times[j] && better({tij, vj}, best)) best = {tij, vj};
    }
    t[i] = best.t;
    by[i] = best.j;
  }
  return make_schedule(t, by);
}

EliminationSchedule solve_simulation(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.size();
  if (n > kSimulationLimit)
    throw InstanceError("simulation is limited to " +
                        std::to_string(kSimulationLimit) + " shapes");

  std::vector<EventQueueEntry> events;
  events.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      events.push_back({detail::touch_unchecked(inst, static_cast<Index>(i),
                                                static_cast<Index>(j)),
                        static_cast<Index>(i), static_cast<Index>(j)});

  auto later = [](const EventQueueEntry& a, const EventQueueEntry& b) {
    return earlier_event(b.time, b.eliminator, b.victim, a.time, a.eliminator,
                         a.victim);
  };
  std::priority_queue<EventQueueEntry, std::vector<EventQueueEntry>,
                      decltype(later)>
      queue(later, std::move(events));

  std::vector<char> dead(n, 0);
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);
  std::size_t remaining = n > 0 ? n - 1 : 0;
  while (remaining > 0 && !queue.empty()) {
    const EventQueueEntry e = queue.top();
    queue.pop();
    if (dead[e.eliminator] || dead[e.victim]) continue;
    dead[e.victim] = 1;
    t[e.victim] = e.time;
    by[e.victim] = e.eliminator;
    --remaining;
  }
  return make_schedule(t, by);
}

}  // namespace growelim
