#pragma once

#include <optional>
#include <span>
#include <string>

namespace polaron {

/// Raw inputs describing the host condensate.
///
/// Lower-dimensional condensates are obtained by harmonic transverse
/// confinement; `omega_perp` confines the 1d gas and `omega_z` the 2d gas.
struct CondensateParams {
  double boson_mass;          // m_B [kg]
  double scattering_length;   // a_3 [m], three-dimensional
  double linear_density;      // n_{0,1} [1/m]
  double omega_perp;          // [rad/s]
  double omega_z;             // [rad/s]
  int dimension = 1;          // 1, 2 or 3

  bool operator==(const CondensateParams&) const = default;
};

struct ImpurityParams {
  double mass;                // m_I [kg]
  double trap_frequency = 0;  // Omega [rad/s], 0 means untrapped
  double eta = 1.0;           // g_IB / g_B

  bool operator==(const ImpurityParams&) const = default;
};

/// Rb host gas, K impurity, a_3 = 100 a_0, n_{0,1} = 7 / um,
/// omega_perp = omega_z = 2 pi x 34 kHz.
CondensateParams reference_condensate(int dimension = 1);
ImpurityParams reference_impurity(double eta = 1.0, double trap_frequency = 0.0);

/// Every derived scale of the bath for one dimension and one coupling.
struct DerivedBath {
  int dimension;
  double eta;
  double boson_mass;        // m_B [kg]
  double impurity_mass;     // m_I [kg]
  double coupling;          // g_{B,d} [J m^d]
  double density;           // n_{0,d} [1/m^d]
  double cutoff;            // Lambda_d [rad/s]
  double tau_pow_d;         // tau_d^d [s^d]
  double tau;               // tau_d [s]
  double tau_s_pow_d;       // coupling-stripped tau_{d,s}^d [s^d]
  double alpha;             // 1 + (Lambda tau)^d / d^2
  double beta;              // (Lambda tau_s)^d
  double eta_critical;      // Froehlich bound
  double healing_length;    // xi [m]
  double sound_speed;       // c [m/s]
  double omega0;            // hbar n01^2 / m_I [rad/s]
  std::optional<double> x_zpf;  // sqrt(hbar / 2 m_I Omega) [m], trapped only
};

/// Surface area of the unit sphere as used by the mode sums: 2, 2 pi, 4 pi.
double sphere_measure(int dimension);

/// Transverse oscillator length entering g_{B,d}; 1 for d = 3.
double transverse_length_factor(const CondensateParams& cond, int dimension);

DerivedBath derive_bath(const CondensateParams& cond, const ImpurityParams& imp);

/// Froehlich critical coupling written in terms of a_3 and n_{0,1}.
double critical_coupling(const CondensateParams& cond, int dimension);

/// Same bound through n_{0,d} xi_d^d; used to cross-check the a_3 form.
double critical_coupling_healing_form(const CondensateParams& cond, int dimension);

struct FrohlichCheck {
  bool valid;       // eta < eta_c (strict)
  double margin;    // eta_c - eta
  std::string diagnostic;
};

FrohlichCheck check_frohlich(double eta, double eta_critical);

/// k_B T >= hbar max_d Lambda_d.
bool check_high_temperature(double temperature, std::span<const DerivedBath> baths);
double high_temperature_threshold(std::span<const DerivedBath> baths);

}  // namespace polaron
