// Parallel kernels against their serial references.

#include <cmath>

#include <benchmark/benchmark.h>

#include "qtur/jumps.hpp"
#include "qtur/tur.hpp"

namespace {

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = qtur::SweepSpec::random_scatter(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(qtur::sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = qtur::SweepSpec::random_scatter(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(qtur::sweep(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MinimizeSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qtur::minimize_q_resonant_serial());
}

void BM_MinimizeParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qtur::minimize_q_resonant());
}

void BM_JumpsSerial(benchmark::State& state) {
  const auto p = qtur::make_params(std::log(3.0), 0.5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qtur::sample_jump_trajectories_serial(p, 50.0, static_cast<std::size_t>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_JumpsParallel(benchmark::State& state) {
  const auto p = qtur::make_params(std::log(3.0), 0.5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qtur::sample_jump_trajectories(p, 50.0, static_cast<std::size_t>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinimizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimizeParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_JumpsSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JumpsParallel)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
