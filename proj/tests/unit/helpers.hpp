#pragma once

#include <cmath>
#include <numbers>

#include "polaron/params.hpp"
#include "polaron/propagators.hpp"

namespace test {

inline constexpr double kTrap = 4.0 * std::numbers::pi * 500.0;

inline polaron::DerivedBath bath(int d, double eta = 1.0, double omega = 0.0) {
  return polaron::derive_bath(polaron::reference_condensate(d),
                              polaron::reference_impurity(eta, omega));
}

inline polaron::Scenario scenario(int d, double eta = 1.0, double omega = 0.0) {
  polaron::Scenario s;
  s.model = polaron::SpectralModel::bec(bath(d, eta, omega));
  s.trap_frequency = omega;
  return s;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace test
