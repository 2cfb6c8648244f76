// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "growelim/generate.hpp"
#include "growelim/naive.hpp"
#include "growelim/quadtree.hpp"

using namespace growelim;

namespace {

Instance uniform(std::size_t n) {
  GeneratorParams p;
  p.n = n;
  p.seed = 1;
  p.rate_max = 16.0;
  return generate(p);
}

void BM_NaiveSerial(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_naive_serial(inst));
  state.SetComplexityN(state.range(0));
}

void BM_NaiveParallel(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_naive(inst));
  state.counters["threads"] = omp_get_max_threads();
  state.SetComplexityN(state.range(0));
}

Quadtree tree_of(const Instance& inst) {
  return Quadtree::build(Normalization::fit(inst).unit_centers(inst));
}

void BM_CnpSerial(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  const Quadtree q = tree_of(inst);
  const double delta = rate_ratio(inst);
  for (auto _ : state) benchmark::DoNotOptimize(compute_cnp_serial(q, delta));
  state.counters["nodes"] = static_cast<double>(q.size());
}

void BM_CnpParallel(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  const Quadtree q = tree_of(inst);
  const double delta = rate_ratio(inst);
  for (auto _ : state) benchmark::DoNotOptimize(compute_cnp(q, delta));
  state.counters["nodes"] = static_cast<double>(q.size());
  state.counters["threads"] = omp_get_max_threads();
}

void BM_SpreadSerial(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_spread_serial(inst));
}

void BM_SpreadParallel(benchmark::State& state) {
  const Instance inst = uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_spread(inst));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_NaiveSerial)->RangeMultiplier(2)->Range(1 << 10, 1 << 13)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NaiveParallel)->RangeMultiplier(2)->Range(1 << 10, 1 << 13)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CnpSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CnpParallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpreadSerial)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpreadParallel)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
