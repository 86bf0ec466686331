#include "polaron/free_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "polaron/constants.hpp"
#include "polaron/error.hpp"
#include "polaron/numerics/hypergeometric.hpp"
#include "polaron/parallel.hpp"

namespace polaron {
namespace {

void require_free(const Scenario& s) {
  if (s.trapped()) throw InvalidArgument("free-particle observables require Omega = 0");
}

void require_grid(std::span<const double> t) {
  for (double v : t) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("time grid must be finite and >= 0");
  }
}

// (2 + x^2 - 2 cos x - 2 x sin x) / w^4 written as t^4 * series(x) for small x.
double msd_kernel(double w, double t) {
  const double x = w * t;
  if (x < 1.0) {
    const double x2 = x * x;
    double term = 2.0 * 3.0 / 24.0;  // k = 2
    double sum = term;
    double fact = 24.0;
    double power = 1.0;
    for (int k = 3; k < 16; ++k) {
      fact *= (2.0 * k - 1.0) * (2.0 * k);
      power *= -x2;
      term = 2.0 * (2.0 * k - 1.0) * power / fact;
      sum += term;
      if (std::abs(term) < 1e-18 * sum) break;
    }
    const double t2 = t * t;
    return t2 * t2 * sum;
  }
  const double w2 = w * w;
  return (2.0 + x * x - 2.0 * std::cos(x) - 2.0 * x * std::sin(x)) / (w2 * w2);
}

// (1 - cos wt) / w^2 without cancellation.
double energy_kernel(double w, double t) {
  if (w == 0.0) return 0.5 * t * t;
  const double s = std::sin(0.5 * w * t);
  return 2.0 * s * s / (w * w);
}

double bath_coefficient(const SpectralModel& m) {
  const int d = m.dimension;
  const double alpha = m.alpha();
  return constants().hbar * std::pow(m.cutoff, d + 1) * m.tau_pow_d /
         (alpha * alpha * d * (d + 1));
}

}  // namespace

SeriesOutput msd_numeric(const Scenario& scenario, const InitialState& init,
                         std::span<const double> t_grid, double temperature, double rel_tol) {
  require_free(scenario);
  require_grid(t_grid);
  if (init.x2_0 < 0.0 || init.v2_0 < 0.0) throw InvalidArgument("initial variances must be >= 0");
  const auto& model = scenario.model;
  const double alpha = model.alpha();
  const double m = model.impurity_mass;
  const double pref = constants().hbar / (m * alpha * m * alpha);

  SeriesOutput out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.value.resize(t_grid.size());
  out.units = "m^2";
  out.method = "asymptotic-propagators";
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    numerics::QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.oscillation_hint = t;
    auto f = [&](double w) { return thermal_spectral_xx(model, w, temperature) * msd_kernel(w, t); };
    const double dyn =
        numerics::value_or_throw(numerics::integrate_adaptive(f, 0.0, model.cutoff, spec), "msd");
    const double g1m1 = 1.0 / alpha - 1.0;
    out.value[i] = g1m1 * g1m1 * init.x2_0 + (t / alpha) * (t / alpha) * init.v2_0 + pref * dyn;
  });
  return out;
}

double loglog_slope(std::span<const double> t, std::span<const double> y, double t_from) {
  if (t.size() != y.size()) throw InvalidArgument("loglog_slope: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from || !(t[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(t[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw InvalidArgument("loglog_slope needs at least two positive points");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char* to_string(DiffusionRegime r) {
  return r == DiffusionRegime::LowTemperature ? "LT" : "HT";
}

DiffusionCoefficient superdiffusion_coefficient(const DerivedBath& bath, DiffusionRegime regime,
                                                double temperature) {
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  const int d = bath.dimension;
  const double a2 = bath.alpha * bath.alpha;
  DiffusionCoefficient out{0.0, regime, std::nullopt};
  if (regime == DiffusionRegime::LowTemperature) {
    out.value = constants().hbar * bath.tau_pow_d * std::pow(bath.cutoff, d + 1) /
                (bath.impurity_mass * d * (d + 1) * a2);
    return out;
  }
  out.value = 2.0 * constants().k_B * temperature * bath.tau_pow_d * std::pow(bath.cutoff, d) /
              (bath.impurity_mass * d * d * a2);
  const DerivedBath one[] = {bath};
  if (!check_high_temperature(temperature, one)) {
    std::ostringstream os;
    os << "T=" << temperature << " K is below the high-temperature threshold "
       << high_temperature_threshold(one) << " K";
    out.warning = os.str();
  }
  return out;
}

double diffusion_ht_beta_form(double beta, int d, double eta, double temperature,
                              double impurity_mass) {
  const double b = beta * eta * eta;
  return 2.0 * constants().k_B * temperature / impurity_mass * b /
         (b * b / (d * d) + 2.0 * b + d * d);
}

HtPeak ht_peak(const DerivedBath& bath, double temperature) {
  if (!(bath.beta > 0.0)) throw InvalidArgument("ht_peak requires beta > 0");
  return {bath.dimension / std::sqrt(bath.beta),
          constants().k_B * temperature / (2.0 * bath.impurity_mass)};
}

SeriesOutput energy(const Scenario& scenario, const InitialState& init,
                    std::span<const double> t_grid, double temperature, EnergyMethod method,
                    double rel_tol) {
  require_free(scenario);
  require_grid(t_grid);
  const auto& model = scenario.model;
  const int d = model.dimension;
  const double alpha = model.alpha();
  const double m = model.impurity_mass;
  const double initial = m * init.v2_0 / (2.0 * alpha * alpha);

  SeriesOutput out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.value.resize(t_grid.size());
  out.units = "J";

  if (method == EnergyMethod::ClosedT0) {
    if (temperature != 0.0) throw InvalidArgument("closed-form energy requires T = 0");
    if (model.kind != SpectralKind::BecLowFrequency) {
      throw InvalidArgument("closed-form energy requires the low-frequency BEC density");
    }
    out.method = "closed_T0";
    const double c = bath_coefficient(model);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double x = model.cutoff * t_grid[i];
      const auto h = numerics::hyp1f2((d + 1) / 2.0, 0.5, (d + 3) / 2.0, -0.25 * x * x);
      if (!h.converged) throw NumericalError("1F2 did not converge in energy", h.value);
      out.value[i] = initial + c * (1.0 - h.value);
    }
    return out;
  }

  out.method = "numeric";
  const double pref = constants().hbar / (m * alpha * alpha);
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    numerics::QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.oscillation_hint = t;
    auto f = [&](double w) {
      return thermal_spectral_xx(model, w, temperature) * energy_kernel(w, t);
    };
    out.value[i] = initial + pref * numerics::value_or_throw(
                                        numerics::integrate_adaptive(f, 0.0, model.cutoff, spec),
                                        "energy");
  });
  return out;
}

double energy_steady_t0(const Scenario& scenario, const InitialState& init) {
  const double alpha = scenario.model.alpha();
  return scenario.model.impurity_mass * init.v2_0 / (2.0 * alpha * alpha) +
         bath_coefficient(scenario.model);
}

double energy_classical_value(double beta, int d, double eta, double temperature) {
  const double b = beta * eta * eta;
  return 2.0 * constants().k_B * temperature * b / (b * b / (d * d) + 2.0 * b + d * d);
}

ClassicalEnergySweep energy_classical(const DerivedBath& bath, std::span<const double> eta_grid,
                                      double temperature) {
  ClassicalEnergySweep out;
  out.series.units = "J";
  out.series.method = "classical-steady-state";
  for (double eta : eta_grid) {
    if (!(eta >= 0.0)) throw InvalidArgument("eta grid must be >= 0");
    out.series.t.push_back(eta);
    out.series.value.push_back(energy_classical_value(bath.beta, bath.dimension, eta, temperature));
  }
  out.eta_max = bath.dimension / std::sqrt(bath.beta);
  out.peak = 0.5 * constants().k_B * temperature;
  return out;
}

}  // namespace polaron
