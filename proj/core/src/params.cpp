#include "polaron/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polaron/constants.hpp"
#include "polaron/error.hpp"

namespace polaron {
namespace {

void require_dimension(int d) {
  if (d < 1 || d > 3) {
    throw InvalidArgument("dimension must be 1, 2 or 3, got " + std::to_string(d));
  }
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw InvalidArgument(os.str());
  }
}

void validate(const CondensateParams& cond, int d) {
  require_dimension(d);
  require_positive(cond.boson_mass, "boson_mass");
  require_positive(cond.scattering_length, "scattering_length");
  require_positive(cond.linear_density, "linear_density");
  if (d == 1) require_positive(cond.omega_perp, "omega_perp");
  if (d == 2) require_positive(cond.omega_z, "omega_z");
}

double boson_coupling(const CondensateParams& cond, int d) {
  const double hbar = constants().hbar;
  return sphere_measure(d) * hbar * hbar * cond.scattering_length /
         (cond.boson_mass * transverse_length_factor(cond, d));
}

// tau_d^d for eta = 1.
double stripped_tau_pow_d(const CondensateParams& cond, int d, double impurity_mass) {
  const double g = boson_coupling(cond, d);
  const double n = std::pow(cond.linear_density, d);
  const double two_pi_d = std::pow(2.0 * std::numbers::pi, d);
  const double inner = cond.boson_mass / (std::pow(g, double(d) / (d + 2)) * n);
  return sphere_measure(d) / (2.0 * two_pi_d * impurity_mass) *
         std::pow(inner, (d + 2) / 2.0);
}

}  // namespace

CondensateParams reference_condensate(int dimension) {
  const double omega_t = 2.0 * std::numbers::pi * 34.0 * units::kHz;
  return CondensateParams{1.4192261e-25, 100.0 * constants().bohr_radius, 7.0 / units::micro,
                          omega_t, omega_t, dimension};
}

ImpurityParams reference_impurity(double eta, double trap_frequency) {
  return ImpurityParams{6.4924249e-26, trap_frequency, eta};
}

double sphere_measure(int dimension) {
  switch (dimension) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw InvalidArgument("dimension must be 1, 2 or 3");
  }
}

double transverse_length_factor(const CondensateParams& cond, int dimension) {
  require_dimension(dimension);
  if (dimension == 3) return 1.0;
  const double omega = dimension == 1 ? cond.omega_perp : cond.omega_z;
  const double length = std::sqrt(constants().hbar / (cond.boson_mass * omega));
  return std::pow(length, 3 - dimension);
}

DerivedBath derive_bath(const CondensateParams& cond, const ImpurityParams& imp) {
  const int d = cond.dimension;
  validate(cond, d);
  require_positive(imp.mass, "impurity mass");
  if (!(imp.trap_frequency >= 0.0) || !std::isfinite(imp.trap_frequency)) {
    throw InvalidArgument("trap_frequency must be >= 0");
  }
  if (!(imp.eta >= 0.0) || !std::isfinite(imp.eta)) {
    throw InvalidArgument("eta must be >= 0");
  }

  const double hbar = constants().hbar;
  DerivedBath b{};
  b.dimension = d;
  b.eta = imp.eta;
  b.boson_mass = cond.boson_mass;
  b.impurity_mass = imp.mass;
  b.coupling = boson_coupling(cond, d);
  b.density = std::pow(cond.linear_density, d);
  b.cutoff = b.coupling * b.density / hbar;
  b.tau_s_pow_d = stripped_tau_pow_d(cond, d, imp.mass);
  b.tau_pow_d = imp.eta * imp.eta * b.tau_s_pow_d;
  b.tau = std::pow(b.tau_pow_d, 1.0 / d);
  b.beta = std::pow(b.cutoff, d) * b.tau_s_pow_d;
  b.alpha = 1.0 + std::pow(b.cutoff, d) * b.tau_pow_d / (d * d);
  b.eta_critical = critical_coupling(cond, d);
  b.healing_length = hbar / std::sqrt(2.0 * b.coupling * cond.boson_mass * b.density);
  b.sound_speed = hbar / (std::numbers::sqrt2 * cond.boson_mass * b.healing_length);
  b.omega0 = hbar * cond.linear_density * cond.linear_density / imp.mass;
  if (imp.trap_frequency > 0.0) {
    b.x_zpf = std::sqrt(hbar / (2.0 * imp.mass * imp.trap_frequency));
  }
  return b;
}

double critical_coupling(const CondensateParams& cond, int d) {
  validate(cond, d);
  const double sd = sphere_measure(d);
  const double prefactor =
      std::sqrt(std::pow(2.0, 2 - d) * std::pow(2.0 * std::numbers::pi, d) / sd);
  const double density_term = std::pow(std::pow(cond.linear_density, d), (2.0 - d) / 2.0);
  const double length_term =
      std::pow(transverse_length_factor(cond, d) / (sd * cond.scattering_length), d / 2.0);
  return prefactor * density_term * length_term;
}

double critical_coupling_healing_form(const CondensateParams& cond, int d) {
  validate(cond, d);
  const double hbar = constants().hbar;
  const double g = boson_coupling(cond, d);
  const double n = std::pow(cond.linear_density, d);
  const double xi = hbar / std::sqrt(2.0 * g * cond.boson_mass * n);
  return std::sqrt(4.0 * std::pow(2.0 * std::numbers::pi, d) / sphere_measure(d)) * n *
         std::pow(xi, d);
}

FrohlichCheck check_frohlich(double eta, double eta_critical) {
  FrohlichCheck check{eta < eta_critical, eta_critical - eta, {}};
  std::ostringstream os;
  os << "eta=" << eta << (check.valid ? " < " : " >= ") << "eta_c=" << eta_critical
     << " (margin " << check.margin << ")";
  check.diagnostic = os.str();
  return check;
}

double high_temperature_threshold(std::span<const DerivedBath> baths) {
  double max_cutoff = 0.0;
  for (const auto& b : baths) max_cutoff = std::max(max_cutoff, b.cutoff);
  return constants().hbar * max_cutoff / constants().k_B;
}

bool check_high_temperature(double temperature, std::span<const DerivedBath> baths) {
  if (baths.empty()) return false;
  return constants().k_B * temperature >= constants().hbar * [&] {
    double m = 0.0;
    for (const auto& b : baths) m = std::max(m, b.cutoff);
    return m;
  }();
}

}  // namespace polaron
