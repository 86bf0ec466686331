#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "polaron/constants.hpp"
#include "polaron/error.hpp"
#include "polaron/steady_state.hpp"

using namespace polaron;

namespace {

double re_d(const Scenario& s, double w) {
  const auto f = damping_fourier(s.model, w, default_fourier_method(s.model));
  return s.trap_frequency * s.trap_frequency - w * w + w * f.theta;
}

}  // namespace

TEST_SUITE("steady_state") {
  TEST_CASE("weak coupling reproduces the bare oscillator") {
    const auto& k = constants();
    for (int d = 1; d <= 3; ++d) {
      for (double T : {0.0, 3e-8, 3e-7}) {
        const auto s = test::scenario(d, 1e-3, test::kTrap);
        const double m = s.model.impurity_mass;
        const double c = T > 0.0 ? 1.0 / std::tanh(k.hbar * test::kTrap / (2.0 * k.k_B * T)) : 1.0;
        const double x2 = k.hbar / (2.0 * m * test::kTrap) * c;
        const double p2 = k.hbar * m * test::kTrap / 2.0 * c;
        CHECK(test::rel(position_variance_ss(s, T), x2) < 1e-5);
        CHECK(test::rel(momentum_variance_ss(s, T), p2) < 1e-5);
      }
    }
  }

  TEST_CASE("zero coupling is handled exactly") {
    const auto s = test::scenario(1, 0.0, test::kTrap);
    const double x2 = constants().hbar / (2.0 * s.model.impurity_mass * test::kTrap);
    CHECK(test::rel(position_variance_ss(s, 0.0), x2) < 1e-10);
  }

  TEST_CASE("classical limit obeys the static sum rule and equipartition") {
    const auto& k = constants();
    const double T = 1e-5;
    for (int d = 1; d <= 3; ++d) {
      const auto s = test::scenario(d, 1.0, test::kTrap);
      const double m = s.model.impurity_mass;
      CHECK(test::rel(position_variance_ss(s, T), k.k_B * T / (m * test::kTrap * test::kTrap)) < 1e-2);
      CHECK(test::rel(momentum_variance_ss(s, T), m * k.k_B * T) < 2e-2);
    }
  }

  TEST_CASE("Heisenberg bound holds across temperatures") {
    std::vector<double> temps;
    for (int i = 0; i < 8; ++i) temps.push_back(1e-9 * std::pow(10.0, i * 3.0 / 7.0));
    for (int d = 1; d <= 3; ++d) {
      for (double eta : {1.0, 3.0}) {
        if (eta >= test::bath(d, eta).eta_critical) continue;
        const auto prof = squeezing_profile(test::scenario(d, eta, test::kTrap), temps);
        REQUIRE(prof.size() == temps.size());
        for (const auto& p : prof) {
          CHECK(p.dx_scaled * p.dp_scaled >= 1.0 - 1e-9);
          CHECK(p.equipartition_ref == doctest::Approx(std::sqrt(2.0 * p.temperature_scaled)));
        }
      }
    }
  }

  TEST_CASE("principal-value and closed Fourier paths give the same variance") {
    const auto s = test::scenario(1, 2.0, test::kTrap);
    SteadyStateOptions pv;
    pv.method = FourierMethod::PrincipalValue;
    pv.rel_tol = 1e-8;
    SteadyStateOptions cf;
    cf.method = FourierMethod::ClosedForm;
    cf.rel_tol = 1e-8;
    CHECK(test::rel(position_variance_ss(s, 1e-8, pv), position_variance_ss(s, 1e-8, cf)) < 1e-6);
  }

  TEST_CASE("resonances and the bound mode are roots of Re D") {
    for (int d = 1; d <= 3; ++d) {
      const auto s = test::scenario(d, 2.0, test::kTrap);
      const auto roots = resonance_frequencies(s);
      REQUIRE_FALSE(roots.empty());
      const double scale = s.model.cutoff * s.model.cutoff;
      for (double w : roots) {
        CHECK(w > 0.0);
        CHECK(w < s.model.cutoff);
        CHECK(std::abs(re_d(s, w)) < 1e-6 * scale);
      }
      // In d = 3 the root sits exponentially close to the cutoff at this coupling.
      const auto wb = bound_mode_frequency(s);
      if (d == 3) continue;
      REQUIRE(wb.has_value());
      CHECK(*wb > s.model.cutoff);
      CHECK(std::abs(re_d(s, *wb)) < 1e-6 * (*wb) * (*wb));
    }
  }

  TEST_CASE("bound mode restores the static sum rule") {
    const auto& k = constants();
    const double T = 1e-5;
    const auto s = test::scenario(2, 3.5, test::kTrap);
    const double classical = k.k_B * T / (s.model.impurity_mass * test::kTrap * test::kTrap);
    SteadyStateOptions without;
    without.include_bound_mode = false;
    CHECK(test::rel(position_variance_ss(s, T), classical) <
          test::rel(position_variance_ss(s, T, without), classical));
  }

  TEST_CASE("susceptibility is consistent") {
    const auto s = test::scenario(1, 1.0, test::kTrap);
    const double w = 0.7 * test::kTrap;
    const auto chi = susceptibility(s, w);
    const auto f = damping_fourier(s.model, w, FourierMethod::ClosedForm);
    const double m = s.model.impurity_mass;
    const double re = test::kTrap * test::kTrap - w * w + w * f.theta;
    const double im = -w * f.xi;
    const double mod2 = re * re + im * im;
    CHECK(chi.chi_sq == doctest::Approx(1.0 / (m * m * mod2)).epsilon(1e-12));
    CHECK(chi.chi_imag == doctest::Approx(w * f.xi / (m * mod2)).epsilon(1e-12));
    CHECK(chi.chi_imag > 0.0);
  }

  TEST_CASE("steady-state inputs are validated") {
    CHECK_THROWS_AS(position_variance_ss(test::scenario(1), 0.0), InvalidArgument);
    CHECK_THROWS_AS(position_variance_ss(test::scenario(1, 1.0, test::kTrap), -1.0), InvalidArgument);
    CHECK_THROWS_AS(susceptibility(test::scenario(1, 1.0, test::kTrap), 0.0), InvalidArgument);
    CHECK(default_fourier_method(SpectralModel::bec(test::bath(1), SpectralKind::BecExact)) ==
          FourierMethod::PrincipalValue);
    CHECK(default_fourier_method(SpectralModel::bec(test::bath(1))) == FourierMethod::ClosedForm);
  }
}
