#include <benchmark/benchmark.h>

#include "mollow/oracle.hpp"

using namespace mollow;

static void BM_OracleG2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_g2(n, {Band::L, Band::R}, 0.3, 1.1));
}
BENCHMARK(BM_OracleG2)->DenseRange(4, 6)->Unit(benchmark::kMicrosecond);

static void BM_BuildBandOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::build_band_operator(n, Band::C, 0.4).matrix.data());
}
BENCHMARK(BM_BuildBandOperator)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
