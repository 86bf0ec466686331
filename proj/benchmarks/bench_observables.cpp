#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "common.hpp"
#include "polaron/free_dynamics.hpp"
#include "polaron/non_markov.hpp"
#include "polaron/steady_state.hpp"

using namespace polaron;

static void BM_MsdNumeric(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 1.0, 0.0);
  std::vector<double> t;
  for (int i = 0; i < 16; ++i) t.push_back((1.0 + 60.0 * i) / s.model.cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(msd_numeric(s, {}, t, 0.0));
}
BENCHMARK(BM_MsdNumeric)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_PositionVariance(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 1.0, bench::kTrap);
  for (auto _ : state) benchmark::DoNotOptimize(position_variance_ss(s, 1e-8));
}
BENCHMARK(BM_PositionVariance)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_MomentumVariance(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 1.0, bench::kTrap);
  for (auto _ : state) benchmark::DoNotOptimize(momentum_variance_ss(s, 1e-8));
}
BENCHMARK(BM_MomentumVariance)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_NonMarkovianity(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 2.0, bench::kTrap);
  const double horizon = 4.0 * 2.0 * std::numbers::pi / bench::kTrap;
  for (auto _ : state) benchmark::DoNotOptimize(non_markovianity_measure(s, 0.0, horizon));
}
BENCHMARK(BM_NonMarkovianity)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_JDistance(benchmark::State& state) {
  const auto s = bench::scenario(2, 3.5, bench::kTrap);
  for (auto _ : state) benchmark::DoNotOptimize(j_distance(s, 1e-9, 10.0 * bench::kTrap));
}
BENCHMARK(BM_JDistance)->Unit(benchmark::kMillisecond);
