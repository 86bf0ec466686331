#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polaron/propagators.hpp"

namespace polaron {

struct Susceptibility {
  double chi_sq;    // |chi|^2 = Q [s^4/kg^2]
  double chi_imag;  // chi'' [s^2/kg]
};

/// Fourier method used for (xi, theta) when none is given: closed forms for
/// the monomial and Ohmic kinds, principal-value quadrature for BecExact.
FourierMethod default_fourier_method(const SpectralModel& model);

/// chi(omega) = 1 / (m D), D = Omega^2 - omega^2 + omega theta - i omega xi.
Susceptibility susceptibility(const Scenario& scenario, double omega);
Susceptibility susceptibility(const Scenario& scenario, double omega, FourierMethod method);

struct SteadyStateOptions {
  double rel_tol = 1e-10;
  std::optional<FourierMethod> method;  // default_fourier_method when unset
  /// Adds the undamped mode above the sharp cutoff (a real pole of chi)
  /// as a delta contribution to the fluctuation integrals.
  bool include_bound_mode = true;
};

/// Roots of Re D on (0, Lambda): the trap resonance and, for a sharp
/// cutoff, a second one close to Lambda.
std::vector<double> resonance_frequencies(const Scenario& scenario,
                                          const SteadyStateOptions& opts = {});

/// Real root of Re D above the cutoff, where xi = 0: an undamped bound mode.
std::optional<double> bound_mode_frequency(const Scenario& scenario,
                                           const SteadyStateOptions& opts = {});

/// <x^2> = (hbar/pi) int_0^Lambda coth(hbar w / 2 k_B T) chi''(w) dw
///         [+ hbar coth(w_b) / (m |Re D'(w_b)|) for the bound mode].
double position_variance_ss(const Scenario& scenario, double temperature,
                            const SteadyStateOptions& opts = {});

/// <p^2> = (hbar m^2/pi) int_0^Lambda w^2 coth(hbar w / 2 k_B T) chi''(w) dw.
double momentum_variance_ss(const Scenario& scenario, double temperature,
                            const SteadyStateOptions& opts = {});

struct SqueezingPoint {
  double temperature;        // [K]
  double temperature_scaled; // k_B T / (hbar Omega)
  double dx_scaled;          // sqrt(2 m Omega <x^2> / hbar)
  double dp_scaled;          // sqrt(2 <p^2> / (hbar m Omega))
  double equipartition_ref;  // sqrt(2 T_scaled)
};

std::vector<SqueezingPoint> squeezing_profile(const Scenario& scenario,
                                              std::span<const double> temperatures,
                                              const SteadyStateOptions& opts = {});

}  // namespace polaron
