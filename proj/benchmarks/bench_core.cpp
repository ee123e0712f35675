#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "scalewise/airquality.hpp"
#include "scalewise/statements.hpp"
#include "scalewise/stats.hpp"

using namespace scalewise;

static void BM_FalsifyTemperatureRatio(benchmark::State& state) {
  const Bindings b{{"temp", ScaleType::interval, ""}};
  const Statement s = RatioStatement{Quantity::base("temp", "x", 80), 2, Quantity::base("temp", "y", 40)};
  for (auto _ : state) benchmark::DoNotOptimize(falsify(s, b));
}
BENCHMARK(BM_FalsifyTemperatureRatio);

// Worst case: nothing flips, so every trial runs.
static void BM_FalsifyExhaustive(benchmark::State& state) {
  const Bindings b{{"f", ScaleType::ordinal, ""}};
  std::vector<Quantity> ga;
  std::vector<Quantity> gb;
  for (int i = 0; i < 5; ++i) {
    ga.push_back(Quantity::base("f", "a" + std::to_string(i), 10 + i));
    gb.push_back(Quantity::base("f", "b" + std::to_string(i), i));
  }
  const Statement s = MeanOrderStatement{ga, gb, MeanKind::median};
  SearchOptions opts;
  opts.trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(falsify(s, b, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FalsifyExhaustive)->Arg(100)->Arg(1000);

static void BM_KendallTau(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<double> x(n);
  std::vector<double> y(n);
  std::iota(x.begin(), x.end(), 0.0);
  std::iota(y.begin(), y.end(), 0.0);
  std::shuffle(y.begin(), y.end(), rng);
  const PairedSample s(x, y);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(s));
}
BENCHMARK(BM_KendallTau)->Arg(10)->Arg(100)->Arg(1000);

static void BM_AqiSubindex(benchmark::State& state) {
  const auto table = BreakpointTable::moderate_bands();
  double c = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(aqi_subindex("O3", c, "ppm", table));
    c = c < 0.069 ? c + 0.001 : 0.0;
  }
}
BENCHMARK(BM_AqiSubindex);

BENCHMARK_MAIN();
