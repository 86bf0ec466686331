#include "polaron/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polaron/constants.hpp"
#include "polaron/error.hpp"

namespace polaron {
namespace {

using cplx = std::complex<double>;
using numerics::QuadratureSpec;

void require_model(const SpectralModel& m) {
  if (m.dimension < 1 || m.dimension > 3) throw InvalidArgument("spectral dimension must be 1, 2 or 3");
  if (!(m.cutoff > 0.0)) throw InvalidArgument("spectral cutoff must be positive");
  if (!(m.impurity_mass > 0.0)) throw InvalidArgument("impurity mass must be positive");
}

// sqrt(1 + y) - 1 without cancellation.
double sqrt1pm1(double y) { return y / (std::sqrt(1.0 + y) + 1.0); }

// J^xx(omega) / omega, finite at omega = 0.
double j_over_omega_xx(const SpectralModel& m, double w) {
  const double d = m.dimension;
  switch (m.kind) {
    case SpectralKind::Ohmic:
      return w <= m.cutoff ? m.impurity_mass * m.gamma : 0.0;
    case SpectralKind::BecLowFrequency:
      return w <= m.cutoff ? m.impurity_mass * m.tau_pow_d * std::pow(w, d + 1) / d : 0.0;
    case SpectralKind::BecExact: {
      if (w == 0.0) return 0.0;
      const double x = w / m.cutoff;
      const double r = std::sqrt(1.0 + x * x);
      const double s = 2.0 * sqrt1pm1(x * x);
      return m.impurity_mass * m.tau_pow_d * std::pow(m.cutoff, d + 2) *
             std::pow(s, (d + 2) / 2.0) / (r * w * d);
    }
  }
  return 0.0;
}

cplx hyp_series(int d, cplx w2) {
  const double b = (d + 2) / 2.0;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -w2;
    const cplx add = term * (b / (b + n));
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

SpectralModel SpectralModel::bec(const DerivedBath& bath, SpectralKind kind) {
  if (kind == SpectralKind::Ohmic) throw InvalidArgument("SpectralModel::bec needs a BEC kind");
  SpectralModel m;
  m.kind = kind;
  m.dimension = bath.dimension;
  m.cutoff = bath.cutoff;
  m.tau_pow_d = bath.tau_pow_d;
  m.impurity_mass = bath.impurity_mass;
  require_model(m);
  return m;
}

SpectralModel SpectralModel::ohmic(int dimension, double cutoff, double gamma,
                                   double impurity_mass) {
  SpectralModel m;
  m.kind = SpectralKind::Ohmic;
  m.dimension = dimension;
  m.cutoff = cutoff;
  m.gamma = gamma;
  m.impurity_mass = impurity_mass;
  require_model(m);
  if (!(gamma >= 0.0)) throw InvalidArgument("Ohmic gamma must be >= 0");
  return m;
}

double SpectralModel::alpha() const {
  if (kind == SpectralKind::Ohmic) return 1.0;
  return 1.0 + std::pow(cutoff, dimension) * tau_pow_d / (dimension * dimension);
}

double thermal_factor(double omega, double temperature) {
  if (!(temperature > 0.0)) return 1.0;
  const double x = constants().hbar * std::abs(omega) / (2.0 * constants().k_B * temperature);
  if (x < 1e-8) return 1.0 / x + x / 3.0;
  if (x > 40.0) return 1.0;
  return 1.0 / std::tanh(x);
}

double thermal_spectral_xx(const SpectralModel& model, double omega, double temperature) {
  if (omega == 0.0) {
    if (!(temperature > 0.0)) return 0.0;
    return j_over_omega_xx(model, 0.0) * 2.0 * constants().k_B * temperature / constants().hbar;
  }
  return omega * j_over_omega_xx(model, omega) * thermal_factor(omega, temperature);
}

double spectral_scalar(const SpectralModel& model, double omega) {
  require_model(model);
  if (!(omega >= 0.0)) throw InvalidArgument("spectral density requires omega >= 0");
  return model.dimension * omega * j_over_omega_xx(model, omega);
}

double spectral_component(const SpectralModel& model, double omega, int i, int j) {
  if (i < 0 || j < 0 || i >= model.dimension || j >= model.dimension) {
    throw InvalidArgument("tensor index out of range");
  }
  if (i != j) return 0.0;
  return spectral_scalar(model, omega) / model.dimension;
}

double spectral_component_xx(const SpectralModel& model, double omega) {
  return spectral_component(model, omega, 0, 0);
}

double spectral_from_modes(const DerivedBath& bath, double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("mode-sum density requires omega > 0");
  const double hbar = constants().hbar;
  const int d = bath.dimension;
  const double c = bath.sound_speed;
  const double xi = bath.healing_length;
  const double q = xi * omega / c;
  const double u = sqrt1pm1(2.0 * q * q);
  const double k = std::sqrt(u) / xi;
  const double group_velocity = c * c * k * (1.0 + u) / omega;
  const double g_ib = bath.eta * bath.coupling;
  const double pref = g_ib * g_ib * bath.density * sphere_measure(d) /
                      (hbar * std::pow(2.0 * std::numbers::pi, d));
  return pref * std::pow(k, d + 1) * std::sqrt(u / (u + 2.0)) / group_velocity;
}

double noise_kernel(const SpectralModel& model, double tau, double temperature,
                    const QuadratureSpec& spec) {
  require_model(model);
  QuadratureSpec s = spec;
  s.oscillation_hint = std::abs(tau);
  auto f = [&](double w) { return thermal_spectral_xx(model, w, temperature) * std::cos(w * tau); };
  return numerics::value_or_throw(numerics::integrate_adaptive(f, 0.0, model.cutoff, s),
                                  "noise_kernel");
}

double dissipation_kernel(const SpectralModel& model, double tau, const QuadratureSpec& spec) {
  require_model(model);
  QuadratureSpec s = spec;
  s.oscillation_hint = std::abs(tau);
  auto f = [&](double w) { return w * j_over_omega_xx(model, w) * std::sin(w * tau); };
  return numerics::value_or_throw(numerics::integrate_adaptive(f, 0.0, model.cutoff, s),
                                  "dissipation_kernel");
}

double damping_kernel_time(const SpectralModel& model, double t, const QuadratureSpec& spec) {
  require_model(model);
  QuadratureSpec s = spec;
  s.oscillation_hint = std::abs(t);
  auto f = [&](double w) { return j_over_omega_xx(model, w) * std::cos(w * t); };
  return numerics::value_or_throw(numerics::integrate_adaptive(f, 0.0, model.cutoff, s),
                                  "damping_kernel_time") /
         model.impurity_mass;
}

double damping_kernel_at_zero(const SpectralModel& model) {
  require_model(model);
  const int d = model.dimension;
  switch (model.kind) {
    case SpectralKind::Ohmic:
      return model.gamma * model.cutoff;
    case SpectralKind::BecLowFrequency:
      return model.tau_pow_d * std::pow(model.cutoff, d + 2) / (d * (d + 2));
    case SpectralKind::BecExact:
      return damping_kernel_time(model, 0.0);
  }
  return 0.0;
}

cplx damping_hypergeometric(int dimension, cplx w) {
  const cplx w2 = w * w;
  if (std::norm(w) < 0.5) return hyp_series(dimension, w2);
  switch (dimension) {
    case 1: return 3.0 * (w - std::atan(w)) / (w2 * w);
    case 2: return 2.0 * (w2 - std::log(1.0 + w2)) / (w2 * w2);
    case 3: return 5.0 * (w2 * w / 3.0 - w + std::atan(w)) / (w2 * w2 * w);
    default: throw InvalidArgument("dimension must be 1, 2 or 3");
  }
}

cplx damping_laplace(const SpectralModel& model, cplx s, LaplacePath path) {
  require_model(model);
  if (s == cplx(0.0)) throw InvalidArgument("damping_laplace is singular at S = 0");
  if (!(s.real() > 0.0)) throw InvalidArgument("damping_laplace requires Re S > 0");
  const int d = model.dimension;
  const double lam = model.cutoff;

  if (path == LaplacePath::Closed && model.kind != SpectralKind::BecExact) {
    if (model.kind == SpectralKind::Ohmic) return model.gamma * std::atan(lam / s);
    const cplx f = damping_hypergeometric(d, lam / s);
    return std::pow(lam, d + 2) * model.tau_pow_d * f / (double(d * (d + 2)) * s);
  }

  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  const cplx s2 = s * s;
  auto re = [&](double w) { return (s * j_over_omega_xx(model, w) / (s2 + w * w)).real(); };
  auto im = [&](double w) { return (s * j_over_omega_xx(model, w) / (s2 + w * w)).imag(); };
  // A near-imaginary S puts a sharp peak at |Im S|; split there.
  std::vector<double> pts{0.0};
  const double peak = std::abs(s.imag());
  if (peak > 0.0 && peak < lam) pts.push_back(peak);
  pts.push_back(lam);
  const double r = numerics::value_or_throw(numerics::integrate_segments(re, pts, spec),
                                            "damping_laplace");
  const double i = numerics::value_or_throw(numerics::integrate_segments(im, pts, spec),
                                            "damping_laplace");
  return cplx(r, i) / model.impurity_mass;
}

namespace detail {

FourierDamping damping_fourier_unchecked(const SpectralModel& model, double omega,
                                         FourierMethod method) {
  return damping_fourier_gap(model, omega, model.cutoff - omega, method);
}

FourierDamping damping_fourier_gap(const SpectralModel& model, double omega, double gap,
                                   FourierMethod method) {
  const int d = model.dimension;
  const double lam = model.cutoff;
  const double m = model.impurity_mass;
  const bool inside = gap > 0.0;
  FourierDamping out{0.0, 0.0};

  if (omega == 0.0) {
    out.xi = std::numbers::pi / 2.0 * j_over_omega_xx(model, 0.0) / m;
    return out;
  }
  out.xi = inside ? std::numbers::pi / 2.0 * j_over_omega_xx(model, omega) / m : 0.0;

  if (method == FourierMethod::ClosedForm && model.kind != SpectralKind::BecExact) {
    const double lg = std::log(std::abs(gap) / (lam + omega));
    if (model.kind == SpectralKind::Ohmic) {
      out.theta = -0.5 * model.gamma * lg;
      return out;
    }
    double p = 0.0;
    const double w2 = omega * omega;
    switch (d) {
      case 1: p = lam + 0.5 * omega * lg; break;
      case 2: p = 0.5 * lam * lam + 0.5 * w2 * std::log(std::abs(gap) * (lam + omega) / w2); break;
      case 3: p = lam * lam * lam / 3.0 + w2 * lam + 0.5 * w2 * omega * lg; break;
    }
    out.theta = -(model.tau_pow_d / d) * omega * p;
    return out;
  }

  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  double pv = 0.0;
  if (inside) {
    auto g = [&](double w) { return j_over_omega_xx(model, w) / (w + omega); };
    if (gap >= omega) {
      pv = numerics::value_or_throw(numerics::integrate_principal_value(g, 0.0, lam, omega, spec),
                                    "damping_fourier");
    } else {
      // Reflected variable v = lam - w puts the pole at v = gap, which is
      // exact when omega sits close to the cutoff.
      auto h = [&](double v) { return -g(lam - v); };
      pv = numerics::value_or_throw(numerics::integrate_principal_value(h, 0.0, lam, gap, spec),
                                    "damping_fourier");
    }
  } else {
    // In v = lam - w the peak at the cutoff sits at v = 0 with width |gap|,
    // so nodes near it are not quantized by the spacing of doubles at lam.
    auto f = [&](double v) {
      const double w = lam - v;
      return j_over_omega_xx(model, w) / ((gap - v) * (w + omega));
    };
    std::vector<double> pts{0.0, lam};
    for (double step = -gap; step < lam; step *= 4.0) pts.push_back(step);
    std::sort(pts.begin(), pts.end());
    pv = numerics::value_or_throw(numerics::integrate_segments(f, pts, spec), "damping_fourier");
  }
  out.theta = -omega * pv / m;
  return out;
}

}  // namespace detail

FourierDamping damping_fourier(const SpectralModel& model, double omega, FourierMethod method) {
  require_model(model);
  if (!(omega >= 0.0)) throw InvalidArgument("damping_fourier requires omega >= 0");
  if (std::abs(omega - model.cutoff) < 1e-9 * model.cutoff) {
    throw InvalidArgument("damping_fourier: omega too close to the cutoff (log singularity)");
  }
  return detail::damping_fourier_unchecked(model, omega, method);
}

}  // namespace polaron
