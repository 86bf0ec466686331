#include "polaron/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polaron/constants.hpp"
#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

namespace polaron {
namespace {

struct Denominator {
  double re;
  double im;  // omega xi (the sign of Im D is dropped)
};

// D at w = anchor + offset. Differences to the trap frequency and to the
// cutoff are formed from the anchor first, so narrow resonances and the
// logarithm at the cutoff keep full precision when the offset is small.
Denominator denominator(const Scenario& s, double anchor, double offset, FourierMethod method) {
  const double w = anchor + offset;
  const double gap = (s.model.cutoff - anchor) - offset;
  const auto fd = detail::damping_fourier_gap(s.model, w, gap, method);
  const double bare = ((s.trap_frequency - anchor) - offset) * (s.trap_frequency + w);
  return {bare + w * fd.theta, w * fd.xi};
}

Denominator denominator(const Scenario& s, double w, FourierMethod method) {
  return denominator(s, w, 0.0, method);
}

double chi_imag(const Scenario& s, double anchor, double offset, FourierMethod method) {
  const auto d = denominator(s, anchor, offset, method);
  const double mod2 = d.re * d.re + d.im * d.im;
  if (d.im == 0.0) return 0.0;
  if (!std::isfinite(mod2)) return 0.0;
  return d.im / (s.model.impurity_mass * mod2);
}

void require_trapped(const Scenario& s) {
  if (!s.trapped()) throw InvalidArgument("steady-state quantities require Omega > 0");
}

FourierMethod method_of(const Scenario& s, const SteadyStateOptions& o) {
  return o.method.value_or(default_fourier_method(s.model));
}

double re_denominator(const Scenario& s, double w, FourierMethod m) {
  return denominator(s, w, m).re;
}

struct Resonance {
  double center;
  double width;       // omega xi / |Re D'|
  double derivative;  // Re D'(center)
};

std::vector<Resonance> find_resonances(const Scenario& s, FourierMethod method) {
  const double lam = s.model.cutoff;
  std::vector<double> grid;
  constexpr int kUniform = 4000;
  for (int i = 1; i < kUniform; ++i) grid.push_back(lam * i / kUniform);
  for (int k = 14; k <= 36; ++k) grid.push_back(lam * (1.0 - std::pow(10.0, -k / 4.0)));
  std::sort(grid.begin(), grid.end());

  std::vector<Resonance> out;
  double prev_w = grid.front();
  double prev_v = re_denominator(s, prev_w, method);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double w = grid[i];
    const double v = re_denominator(s, w, method);
    if ((prev_v > 0.0) != (v > 0.0)) {
      double lo = prev_w, hi = w, flo = prev_v;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = re_denominator(s, mid, method);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double r = 0.5 * (lo + hi);
      const double h = std::min(1e-6 * r, 0.25 * (lam - r));
      const double deriv =
          (denominator(s, r, h, method).re - denominator(s, r, -h, method).re) / (2.0 * h);
      const double im = denominator(s, r, method).im;
      out.push_back({r, std::abs(deriv) > 0.0 ? im / std::abs(deriv) : 0.0, deriv});
    }
    prev_w = w;
    prev_v = v;
  }
  return out;
}

std::optional<Resonance> find_bound_mode(const Scenario& s, FourierMethod method) {
  const double lam = s.model.cutoff;
  const double omega2 = s.trap_frequency * s.trap_frequency;
  // Re D -> +inf at the cutoff (log singularity of theta) and behaves like
  // Omega^2 + Gamma(0) - w^2 far above it.
  const double far = 2.0 * std::sqrt(omega2 + damping_kernel_at_zero(s.model)) + 2.0 * lam;
  std::vector<double> grid;
  for (int k = 40; k >= 1; --k) grid.push_back(lam * (1.0 + std::pow(2.0, -k)));
  for (int i = 1; i <= 400; ++i) grid.push_back(1.5 * lam + (far - 1.5 * lam) * i / 400.0);
  double prev_w = grid.front();
  double prev_v = re_denominator(s, prev_w, method);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double w = grid[i];
    const double v = re_denominator(s, w, method);
    if (prev_v > 0.0 && v <= 0.0) {
      double lo = prev_w, hi = w;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (re_denominator(s, mid, method) > 0.0) lo = mid; else hi = mid;
      }
      const double r = 0.5 * (lo + hi);
      const double h = std::min(1e-6 * r, 0.25 * (r - lam));
      const double deriv =
          (denominator(s, r, h, method).re - denominator(s, r, -h, method).re) / (2.0 * h);
      return Resonance{r, 0.0, deriv};
    }
    prev_w = w;
    prev_v = v;
  }
  return std::nullopt;
}

// (hbar/pi) int_0^Lambda coth * chi'' * weight(w) dw, with delta-function
// contributions for resonances whose width vanishes (undamped modes).
template <class Weight>
double fluctuation_integral(const Scenario& s, double temperature, const SteadyStateOptions& opts,
                            Weight&& weight) {
  require_trapped(s);
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  const FourierMethod method = method_of(s, opts);
  const double lam = s.model.cutoff;
  const double m = s.model.impurity_mass;
  const double hbar = constants().hbar;
  const double kt = constants().k_B * temperature;

  auto coth = [&](double w) {
    if (temperature > 0.0 && w < 1e-6 * lam) return 2.0 * kt / (hbar * w);
    return thermal_factor(w, temperature);
  };
  auto integrand = [&](double anchor, double offset) {
    const double w = anchor + offset;
    return coth(w) * chi_imag(s, anchor, offset, method) * weight(w);
  };

  const auto resonances = find_resonances(s, method);
  double delta_sum = 0.0;
  if (opts.include_bound_mode) {
    if (const auto b = find_bound_mode(s, method)) {
      delta_sum += coth(b->center) * weight(b->center) * std::numbers::pi /
                   (m * std::abs(b->derivative));
    }
  }

  // Breakpoints, and for every interval the resonance whose Lorentzian core it covers.
  struct Piece {
    double a, b;
    const Resonance* core;
  };
  std::vector<double> points{0.0, lam};
  std::vector<std::pair<double, double>> cores;
  std::vector<const Resonance*> core_of;
  for (std::size_t i = 0; i < resonances.size(); ++i) {
    const auto& r = resonances[i];
    if (!(r.width > 0.0)) {
      delta_sum += coth(r.center) * weight(r.center) * std::numbers::pi /
                   (m * std::abs(r.derivative));
      continue;
    }
    double room_lo = r.center;
    double room_hi = lam - r.center;
    if (i > 0) room_lo = std::min(room_lo, 0.5 * (r.center - resonances[i - 1].center));
    if (i + 1 < resonances.size()) {
      room_hi = std::min(room_hi, 0.5 * (resonances[i + 1].center - r.center));
    }
    const double half = 50.0 * r.width;
    const double lo = r.center - std::min(half, room_lo);
    const double hi = r.center + std::min(half, room_hi);
    cores.emplace_back(lo, hi);
    core_of.push_back(&r);
    points.push_back(lo);
    points.push_back(hi);
    for (double step = 4.0 * half; step < room_lo; step *= 4.0) points.push_back(r.center - step);
    for (double step = 4.0 * half; step < room_hi; step *= 4.0) points.push_back(r.center + step);
  }
  // theta has a logarithmic singularity at the cutoff; grade the mesh toward it.
  for (int k = 1; k <= 26; ++k) points.push_back(lam * (1.0 - std::pow(4.0, -k)));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Piece> pieces;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Piece p{points[i - 1], points[i], nullptr};
    if (!(p.b > p.a)) continue;
    for (std::size_t c = 0; c < cores.size(); ++c) {
      // Pieces narrower than the width see a smooth integrand; plain quadrature is better there.
      if (p.a >= cores[c].first && p.b <= cores[c].second && p.b - p.a > core_of[c]->width) {
        p.core = core_of[c];
      }
    }
    pieces.push_back(p);
  }

  numerics::QuadratureSpec spec;
  spec.rel_tol = opts.rel_tol;
  numerics::QuadratureResult total;
  for (const auto& p : pieces) {
    numerics::QuadratureResult r;
    if (p.core != nullptr) {
      const double c = p.core->center;
      const double w = p.core->width;
      auto g = [&](double phi) {
        const double t = std::tan(phi);
        return integrand(c, w * t) * w * (1.0 + t * t);
      };
      r = numerics::integrate_adaptive(g, std::atan((p.a - c) / w), std::atan((p.b - c) / w),
                                       spec);
    } else {
      // Anchor at the end nearer the cutoff, where the integrand varies fastest.
      const double anchor = p.b;
      r = numerics::integrate_adaptive([&](double u) { return integrand(anchor, -u); }, 0.0,
                                       p.b - p.a, spec);
    }
    total.value += r.value;
    total.error += r.error;
    total.l1_norm += r.l1_norm;
  }
  const double value = hbar / std::numbers::pi * (total.value + delta_sum);
  if (!std::isfinite(value) || total.error > 100.0 * opts.rel_tol * total.l1_norm + 1e-300) {
    throw NumericalError("fluctuation-dissipation integral did not converge", value);
  }
  if (!(value > 0.0)) {
    throw NumericalError("non-positive steady-state variance (unstable scenario?)", value);
  }
  return value;
}

}  // namespace

FourierMethod default_fourier_method(const SpectralModel& model) {
  return model.kind == SpectralKind::BecExact ? FourierMethod::PrincipalValue
                                              : FourierMethod::ClosedForm;
}

Susceptibility susceptibility(const Scenario& scenario, double omega) {
  return susceptibility(scenario, omega, default_fourier_method(scenario.model));
}

Susceptibility susceptibility(const Scenario& scenario, double omega, FourierMethod method) {
  require_trapped(scenario);
  if (!(omega > 0.0)) throw InvalidArgument("susceptibility requires omega > 0");
  const auto fd = damping_fourier(scenario.model, omega, method);
  const double bare = (scenario.trap_frequency - omega) * (scenario.trap_frequency + omega);
  const double re = bare + omega * fd.theta;
  const double im = omega * fd.xi;
  const double m = scenario.model.impurity_mass;
  const double mod2 = re * re + im * im;
  if (mod2 == 0.0) throw NumericalError("susceptibility pole on the real axis");
  return {1.0 / (m * m * mod2), im / (m * mod2)};
}

std::vector<double> resonance_frequencies(const Scenario& scenario,
                                          const SteadyStateOptions& opts) {
  require_trapped(scenario);
  std::vector<double> out;
  for (const auto& r : find_resonances(scenario, method_of(scenario, opts))) out.push_back(r.center);
  return out;
}

std::optional<double> bound_mode_frequency(const Scenario& scenario,
                                           const SteadyStateOptions& opts) {
  require_trapped(scenario);
  if (const auto b = find_bound_mode(scenario, method_of(scenario, opts))) return b->center;
  return std::nullopt;
}

double position_variance_ss(const Scenario& scenario, double temperature,
                            const SteadyStateOptions& opts) {
  return fluctuation_integral(scenario, temperature, opts, [](double) { return 1.0; });
}

double momentum_variance_ss(const Scenario& scenario, double temperature,
                            const SteadyStateOptions& opts) {
  const double m = scenario.model.impurity_mass;
  return m * m * fluctuation_integral(scenario, temperature, opts, [](double w) { return w * w; });
}

std::vector<SqueezingPoint> squeezing_profile(const Scenario& scenario,
                                              std::span<const double> temperatures,
                                              const SteadyStateOptions& opts) {
  require_trapped(scenario);
  const double hbar = constants().hbar;
  const double m = scenario.model.impurity_mass;
  const double omega = scenario.trap_frequency;
  std::vector<SqueezingPoint> out(temperatures.size());
  parallel_for(temperatures.size(), [&](std::size_t i) {
    const double t = temperatures[i];
    const double x2 = position_variance_ss(scenario, t, opts);
    const double p2 = momentum_variance_ss(scenario, t, opts);
    const double ts = constants().k_B * t / (hbar * omega);
    out[i] = {t, ts, std::sqrt(2.0 * m * omega * x2 / hbar), std::sqrt(2.0 * p2 / (hbar * m * omega)),
              std::sqrt(2.0 * ts)};
  });
  return out;
}

}  // namespace polaron
