#include "polaron/non_markov.hpp"

#include <cmath>
#include <numbers>

#include "polaron/error.hpp"

namespace polaron {
namespace {

// sin(x t) / x with the x -> 0 limit.
double sin_ratio(double x, double t) {
  const double y = x * t;
  if (std::abs(y) < 1e-4) return t * (1.0 - y * y / 6.0);
  return std::sin(y) / x;
}

}  // namespace

double backflow_delta(const Scenario& scenario, double t, double temperature, double rel_tol) {
  if (!(t >= 0.0)) throw InvalidArgument("backflow_delta requires t >= 0");
  if (t == 0.0) return 0.0;
  const auto& model = scenario.model;
  const double omega = scenario.trap_frequency;
  numerics::QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.oscillation_hint = t;
  auto f = [&](double w) {
    return thermal_spectral_xx(model, w, temperature) *
           (sin_ratio(w - omega, t) + sin_ratio(w + omega, t));
  };
  auto r = numerics::integrate_adaptive(f, 0.0, model.cutoff, spec);
  // The integrand can vanish identically (eta = 0); accept a zero result.
  if (r.l1_norm == 0.0) return 0.0;
  return 0.5 * numerics::value_or_throw(r, "backflow_delta");
}

BackflowResult non_markovianity_measure(const Scenario& scenario, double temperature,
                                        double horizon, const BackflowOptions& opts) {
  if (!scenario.trapped()) throw InvalidArgument("non-Markovianity measure needs Omega > 0");
  if (opts.samples_per_period < 4) throw InvalidArgument("samples_per_period must be >= 4");
  const double period = 2.0 * std::numbers::pi / scenario.trap_frequency;
  if (horizon == 0.0) horizon = 20.0 * period;
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");

  BackflowResult out;
  out.eta = 0.0;
  out.dimension = scenario.model.dimension;
  out.temperature = temperature;
  out.horizon = horizon;

  const auto n = static_cast<std::size_t>(std::ceil(horizon / period * opts.samples_per_period));
  out.t.resize(n + 1);
  out.delta.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out.t[i] = horizon * static_cast<double>(i) / static_cast<double>(n);
    out.delta[i] = backflow_delta(scenario, out.t[i], temperature, opts.rel_tol);
  }

  auto delta = [&](double t) { return backflow_delta(scenario, t, temperature, opts.rel_tol); };
  auto crossing = [&](double lo, double hi, bool lo_negative) {
    while (hi - lo > opts.bisection_rel_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      if ((delta(mid) < 0.0) == lo_negative) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  double start = -1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool was_negative = out.delta[i - 1] < 0.0;
    const bool is_negative = out.delta[i] < 0.0;
    if (!was_negative && is_negative) {
      start = crossing(out.t[i - 1], out.t[i], false);
    } else if (was_negative && !is_negative) {
      const double end = crossing(out.t[i - 1], out.t[i], true);
      out.measure += std::abs(numerics::integrate_adaptive(delta, start, end, spec).value);
      ++out.negative_stretches;
      start = -1.0;
    }
  }
  if (start >= 0.0) {
    out.measure += std::abs(numerics::integrate_adaptive(delta, start, horizon, spec).value);
    ++out.negative_stretches;
    out.lower_bound = true;
  }
  return out;
}

double j_distance(const Scenario& scenario, double temperature, double gamma,
                  const SteadyStateOptions& opts) {
  if (!(gamma > 0.0)) throw InvalidArgument("j_distance requires gamma > 0");
  Scenario ohmic = scenario;
  ohmic.model = SpectralModel::ohmic(scenario.model.dimension, scenario.model.cutoff, gamma,
                                     scenario.model.impurity_mass);
  const double a = position_variance_ss(scenario, temperature, opts);
  const double b = position_variance_ss(ohmic, temperature, opts);
  return std::abs(a - b) / (a + b);
}

}  // namespace polaron
