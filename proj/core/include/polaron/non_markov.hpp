#pragma once

#include <vector>

#include "polaron/numerics/quadrature.hpp"
#include "polaron/propagators.hpp"
#include "polaron/steady_state.hpp"

namespace polaron {

/// Delta(t) = int_0^t nu^xx(s) cos(Omega s) ds, evaluated with the s-integral
/// done analytically:
///   (1/2) int_0^Lambda J^xx coth [sin((w-Omega)t)/(w-Omega) + sin((w+Omega)t)/(w+Omega)] dw.
double backflow_delta(const Scenario& scenario, double t, double temperature,
                      double rel_tol = 1e-10);

struct BackflowOptions {
  int samples_per_period = 64;
  double bisection_rel_tol = 1e-6;
  double rel_tol = 1e-10;
};

struct BackflowResult {
  double eta = 0.0;
  int dimension = 0;
  double temperature = 0.0;
  double horizon = 0.0;
  std::vector<double> t;      // sampling grid
  std::vector<double> delta;  // Delta(t) on the grid
  double measure = 0.0;       // N = |int_{Delta<0} Delta dt| [kg/s]
  bool lower_bound = false;   // horizon ended inside a negative stretch
  int negative_stretches = 0;
};

/// Fidelity-based backflow measure, reported as a non-negative magnitude.
/// A horizon of 0 selects 20 trap periods.
BackflowResult non_markovianity_measure(const Scenario& scenario, double temperature,
                                        double horizon = 0.0, const BackflowOptions& opts = {});

/// |<x^2>_d - <x^2>_Ohm| / (<x^2>_d + <x^2>_Ohm), the Ohmic reference sharing
/// the trap, cutoff and mass of `scenario`.
double j_distance(const Scenario& scenario, double temperature, double gamma,
                  const SteadyStateOptions& opts = {});

}  // namespace polaron
