#include <benchmark/benchmark.h>

#include "samplan/dist.hpp"
#include "samplan/optimize.hpp"

using namespace samplan;

static void BM_BinomialOc(benchmark::State& state) {
  const SamplingPlan plan(state.range(0), state.range(0) / 40);
  for (auto _ : state) benchmark::DoNotOptimize(binomial_oc(0.07, plan));
}
BENCHMARK(BM_BinomialOc)->Arg(88)->Arg(800)->Arg(8000);

static void BM_ExtendedOc(benchmark::State& state) {
  const std::int64_t lot = state.range(0);
  const SamplingPlan plan(88, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hypergeom_oc_extended(0.07 * static_cast<double>(lot), lot, plan));
}
BENCHMARK(BM_ExtendedOc)->Arg(1000)->Arg(100000)->Arg(10000000);

static void BM_MinSampleExtended(benchmark::State& state) {
  const std::int64_t lot = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(min_sample_extended(lot, 2));
}
BENCHMARK(BM_MinSampleExtended)->Arg(512)->Arg(5000)->Arg(1000000);

static void BM_IntervalTable(benchmark::State& state) {
  const std::int64_t c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(interval_table(c));
}
BENCHMARK(BM_IntervalTable)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
