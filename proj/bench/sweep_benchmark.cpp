// Serial versus OpenMP grid diagonalization.

#include <benchmark/benchmark.h>

#include "smm/sweep.hpp"

namespace {

smm::SweepGrid bench_grid(benchmark::State& state) {
  smm::SweepGrid g;
  g.b_min = 0.0;
  g.b_max = 1.0;
  g.steps = static_cast<std::size_t>(state.range(0));
  g.theta = 0.3;
  return g;
}

void BM_GridSerial(benchmark::State& state) {
  const smm::SpinSystem sys;
  const smm::SweepGrid g = bench_grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(smm::diagonalize_grid_serial(sys, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridParallel(benchmark::State& state) {
  const smm::SpinSystem sys;
  const smm::SweepGrid g = bench_grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(smm::diagonalize_grid(sys, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepWithTracking(benchmark::State& state) {
  const smm::SpinSystem sys;
  const smm::SweepGrid g = bench_grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(smm::sweep_spectrum(sys, g));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepWithTracking)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
