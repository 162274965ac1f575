#include <benchmark/benchmark.h>

#include "mollow/dynamics.hpp"

using namespace mollow;

static void BM_Evolve(benchmark::State& state) {
  const auto c = coefficients(DressedParams::make(100.0, 30.0), {0.1, 0.1, 0.1});
  const double t_end = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(kGroundDressedState, c, t_end, 0.01).back());
}
BENCHMARK(BM_Evolve)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_SteadyState(benchmark::State& state) {
  const auto c = coefficients(DressedParams::make(100.0, 30.0), {0.1, 0.1, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(c));
}
BENCHMARK(BM_SteadyState);
