#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "common.hpp"
#include "polaron/numerics/hypergeometric.hpp"
#include "polaron/numerics/quadrature.hpp"
#include "polaron/spectral.hpp"

using namespace polaron;

static void BM_DampingLaplaceClosed(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 1.0, 0.0);
  const std::complex<double> z(0.3 * s.model.cutoff, 0.7 * s.model.cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(damping_laplace(s.model, z));
}
BENCHMARK(BM_DampingLaplaceClosed)->DenseRange(1, 3);

static void BM_DampingFourierPrincipalValue(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<int>(state.range(0)), 1.0, bench::kTrap);
  const double w = 0.4 * s.model.cutoff;
  for (auto _ : state) {
    benchmark::DoNotOptimize(damping_fourier(s.model, w, FourierMethod::PrincipalValue));
  }
}
BENCHMARK(BM_DampingFourierPrincipalValue)->DenseRange(1, 3);

static void BM_Hyp1F2(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerics::hyp1f2(1.0, 0.5, 2.0, -0.25 * x * x));
}
BENCHMARK(BM_Hyp1F2)->Arg(2)->Arg(50)->Arg(5000);

static void BM_OscillatoryQuadrature(benchmark::State& state) {
  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.oscillation_hint = static_cast<double>(state.range(0));
  const double k = spec.oscillation_hint;
  auto f = [k](double u) { return u * std::cos(k * u); };
  for (auto _ : state) benchmark::DoNotOptimize(numerics::integrate_adaptive(f, 0.0, 1.0, spec));
}
BENCHMARK(BM_OscillatoryQuadrature)->Arg(100)->Arg(10000);

static void BM_PropagatorsZakian(benchmark::State& state) {
  const auto s = bench::scenario(1, 1.0, bench::kTrap);
  std::vector<double> t;
  for (int i = 1; i <= state.range(0); ++i) t.push_back(i * 2e-5);
  for (auto _ : state) benchmark::DoNotOptimize(propagators_zakian(s, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagatorsZakian)->Arg(16)->Arg(256);
