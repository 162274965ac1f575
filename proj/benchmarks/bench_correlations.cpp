#include <benchmark/benchmark.h>

#include "mollow/correlations.hpp"
#include "mollow/sweep.hpp"

using namespace mollow;

static void BM_G2ChainPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double d = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g2_chain({Band::L, Band::R}, n, d, 0.7));
    d += 1e-3;
  }
}
BENCHMARK(BM_G2ChainPoint)->Arg(2)->Arg(8)->Arg(1000);

static void BM_MapGrid(benchmark::State& state) {
  SweepConfig c;
  c.n_atoms = 8;
  c.pairs = {{Band::L, Band::R}};
  c.alpha1 = c.alpha2 = AxisGrid{0.0, kPi, static_cast<int>(state.range(0))};
  c.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_map(c).quantities.front().values.data());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MapGrid)->Args({201, 1})->Args({201, 4})->Unit(benchmark::kMillisecond);
