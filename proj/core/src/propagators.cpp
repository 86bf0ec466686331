#include "polaron/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

namespace polaron {

using cplx = std::complex<double>;

cplx green_laplace(GreenKind which, cplx s, const Scenario& scenario) {
  if (s == cplx(0.0)) throw InvalidArgument("green_laplace is singular at S = 0");
  const double omega2 = scenario.trap_frequency * scenario.trap_frequency;
  const cplx memory = s * damping_laplace(scenario.model, s, scenario.laplace_path);
  const cplx denom = s * s + omega2 + memory;
  const double scale = std::max({std::norm(s), omega2, std::abs(memory)});
  if (std::abs(denom) <= 1e-14 * scale) {
    throw NumericalError("green_laplace: denominator vanishes");
  }
  return which == GreenKind::G1 ? s / denom : 1.0 / denom;
}

const char* to_string(PropagatorMethod m) {
  return m == PropagatorMethod::Zakian ? "zakian" : "asymptotic";
}

PropagatorSamples propagators_zakian(const Scenario& scenario, std::span<const double> t_grid,
                                     const numerics::ZakianConstants& consts) {
  PropagatorSamples out;
  out.method = PropagatorMethod::Zakian;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.g1.resize(t_grid.size());
  out.g2.resize(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw InvalidArgument("propagators_zakian requires t > 0");
  }
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    try {
      out.g1[i] = numerics::zakian_invert(
          [&](cplx s) { return green_laplace(GreenKind::G1, s, scenario); }, t, consts);
      out.g2[i] = numerics::zakian_invert(
          [&](cplx s) { return green_laplace(GreenKind::G2, s, scenario); }, t, consts);
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << "Zakian inversion failed at t=" << t << ": " << e.what();
      throw NumericalError(os.str());
    }
  });
  return out;
}

PropagatorSamples propagators_asymptotic_free(const Scenario& scenario,
                                              std::span<const double> t_grid) {
  if (scenario.trapped()) {
    throw InvalidArgument("asymptotic free propagators require an untrapped impurity");
  }
  const double alpha = scenario.model.alpha();
  PropagatorSamples out;
  out.method = PropagatorMethod::Asymptotic;
  out.t.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw InvalidArgument("time grid must be non-negative");
    out.g1.push_back(1.0 / alpha);
    out.g2.push_back(t / alpha);
  }
  return out;
}

StabilityReport stability_probe(const Scenario& scenario, double horizon) {
  if (!scenario.trapped()) throw InvalidArgument("stability_probe needs a trapped scenario");
  if (!(horizon > 0.0)) throw InvalidArgument("stability_probe horizon must be positive");
  StabilityReport report;
  const double omega = scenario.trap_frequency;
  report.renormalization_margin = omega * omega - damping_kernel_at_zero(scenario.model);
  if (report.renormalization_margin <= 0.0) {
    std::ostringstream os;
    os << "Omega^2 - Gamma(0) = " << report.renormalization_margin
       << " <= 0: the neglected frequency renormalization is not small";
    report.warnings.push_back(os.str());
  }
  if (omega * horizon > kZakianPhaseLimit) {
    std::ostringstream os;
    os << "Omega*horizon = " << omega * horizon << " exceeds the Zakian resolution limit "
       << kZakianPhaseLimit << "; late-time amplitudes are unreliable";
    report.warnings.push_back(os.str());
  }

  constexpr int kSamples = 400;
  std::vector<double> grid(kSamples);
  for (int i = 0; i < kSamples; ++i) grid[i] = horizon * (i + 1) / kSamples;
  const auto samples = propagators_zakian(scenario, grid);
  for (int i = 0; i < kSamples; ++i) {
    const double amp = std::max(std::abs(samples.g1[i]), omega * std::abs(samples.g2[i]));
    if (grid[i] <= 0.5 * horizon) {
      report.early_max = std::max(report.early_max, amp);
    } else {
      report.late_max = std::max(report.late_max, amp);
    }
  }
  report.stable = report.late_max < report.early_max * (1.0 - 1e-6);
  if (!report.stable) report.warnings.push_back("propagator amplitude does not decay over the horizon");
  return report;
}

}  // namespace polaron
