#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polaron/numerics/quadrature.hpp"
#include "polaron/params.hpp"
#include "polaron/propagators.hpp"

namespace polaron {

/// Initial second moments; cross terms are taken as zero.
struct InitialState {
  double x2_0 = 0.0;  // <x^2(0)> [m^2]
  double v2_0 = 0.0;  // <xdot^2(0)> [m^2/s^2]

  bool operator==(const InitialState&) const = default;
};

struct SeriesOutput {
  std::vector<double> t;
  std::vector<double> value;
  std::string units;
  std::string method;
};

/// Mean square displacement of the untrapped impurity with the long-time
/// propagators G1 = 1/alpha, G2 = t/alpha:
///
///   MSD = (1/alpha - 1)^2 x2_0 + (t/alpha)^2 v2_0
///       + hbar/(m alpha)^2 int_0^Lambda J^xx coth(...) K(w, t) dw,
///   K = (2 + w^2 t^2 - 2 cos wt - 2 wt sin wt) / w^4.
SeriesOutput msd_numeric(const Scenario& scenario, const InitialState& init,
                         std::span<const double> t_grid, double temperature,
                         double rel_tol = 1e-9);

/// Log-log slope from a least-squares fit over points with t >= t_from.
double loglog_slope(std::span<const double> t, std::span<const double> y, double t_from);

enum class DiffusionRegime { LowTemperature, HighTemperature };
const char* to_string(DiffusionRegime r);

struct DiffusionCoefficient {
  double value = 0.0;  // [m^2/s^2]
  DiffusionRegime regime;
  std::optional<std::string> warning;
};

/// D^LT = hbar tau^d Lambda^(d+1) / (m d (d+1) alpha^2),
/// D^HT = 2 k_B T tau^d Lambda^d / (m d^2 alpha^2).
/// HT below the high-temperature threshold is still evaluated, with a warning.
DiffusionCoefficient superdiffusion_coefficient(const DerivedBath& bath, DiffusionRegime regime,
                                                double temperature);

/// D^HT through beta = (Lambda tau_s)^d:
/// (2 k_B T/m) beta eta^2 / (beta^2 eta^4 / d^2 + 2 beta eta^2 + d^2).
double diffusion_ht_beta_form(double beta, int dimension, double eta, double temperature,
                              double impurity_mass);

struct HtPeak {
  double eta_max;
  double d_max;  // [m^2/s^2]
};

/// eta_max = d / sqrt(beta), D_max = k_B T / (2 m).
HtPeak ht_peak(const DerivedBath& bath, double temperature);

enum class EnergyMethod { ClosedT0, Numeric };

/// Average kinetic energy m <xdot^2> / 2 with the long-time propagators.
///
/// ClosedT0 (T = 0 only):
///   E = m v2_0 / (2 alpha^2) + C [1 - 1F2((d+1)/2; 1/2, (d+3)/2; -Lambda^2 t^2 / 4)],
///   C = hbar Lambda^(d+1) tau^d / (alpha^2 d (d+1)).
/// Numeric: hbar/(m alpha^2) int J^xx coth(...) (1 - cos wt) / w^2 dw.
SeriesOutput energy(const Scenario& scenario, const InitialState& init,
                    std::span<const double> t_grid, double temperature, EnergyMethod method,
                    double rel_tol = 1e-10);

/// Long-time value of the zero-temperature energy.
double energy_steady_t0(const Scenario& scenario, const InitialState& init);

struct ClassicalEnergySweep {
  SeriesOutput series;  // t column holds eta
  double eta_max;
  double peak;          // k_B T / 2 [J]
};

/// E^cl,ss(eta) = 2 k_B T beta eta^2 / (beta^2 eta^4 / d^2 + 2 beta eta^2 + d^2).
ClassicalEnergySweep energy_classical(const DerivedBath& bath, std::span<const double> eta_grid,
                                      double temperature);
double energy_classical_value(double beta, int dimension, double eta, double temperature);

}  // namespace polaron
