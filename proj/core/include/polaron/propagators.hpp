#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "polaron/numerics/zakian.hpp"
#include "polaron/spectral.hpp"

namespace polaron {

/// One impurity in one bath: the spectral model plus an optional harmonic trap.
struct Scenario {
  SpectralModel model;
  double trap_frequency = 0.0;  // Omega [rad/s]
  LaplacePath laplace_path = LaplacePath::Closed;

  bool trapped() const { return trap_frequency > 0.0; }
};

enum class GreenKind { G1, G2 };

/// Laplace-domain propagators of the generalized Langevin equation,
/// G1 = S / (S^2 + Omega^2 + S L[Gamma](S)) and G2 = 1 / (...).
std::complex<double> green_laplace(GreenKind which, std::complex<double> s,
                                   const Scenario& scenario);

enum class PropagatorMethod { Zakian, Asymptotic };
const char* to_string(PropagatorMethod m);

struct PropagatorSamples {
  std::vector<double> t;
  std::vector<double> g1;  // dimensionless
  std::vector<double> g2;  // [s]
  PropagatorMethod method = PropagatorMethod::Zakian;
};

/// Pointwise Zakian inversion of green_laplace; grid points run in parallel.
PropagatorSamples propagators_zakian(
    const Scenario& scenario, std::span<const double> t_grid,
    const numerics::ZakianConstants& consts = numerics::ZakianConstants::standard());

/// Long-time forms G1 = 1/alpha, G2 = t/alpha of the untrapped impurity.
PropagatorSamples propagators_asymptotic_free(const Scenario& scenario,
                                              std::span<const double> t_grid);

struct StabilityReport {
  bool stable = false;
  double early_max = 0.0;  // max(|G1|, Omega |G2|) on (0, horizon/2]
  double late_max = 0.0;   // same on [horizon/2, horizon]
  double renormalization_margin = 0.0;  // Omega^2 - Gamma(0) [1/s^2]
  std::vector<std::string> warnings;
};

/// Compares late-time and early-time propagator amplitudes of a trapped
/// impurity. Zakian inversion resolves only a limited number of
/// oscillations, so horizons beyond Omega t ~ 15 are flagged.
StabilityReport stability_probe(const Scenario& scenario, double horizon);

/// Largest Omega t the standard Zakian order resolves reliably.
inline constexpr double kZakianPhaseLimit = 15.0;

}  // namespace polaron
