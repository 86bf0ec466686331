#pragma once

#include <numbers>

#include "polaron/params.hpp"
#include "polaron/propagators.hpp"

namespace bench {

inline constexpr double kTrap = 4.0 * std::numbers::pi * 500.0;

inline polaron::Scenario scenario(int d, double eta, double omega) {
  polaron::Scenario s;
  s.model = polaron::SpectralModel::bec(
      polaron::derive_bath(polaron::reference_condensate(d), polaron::reference_impurity(eta, omega)));
  s.trap_frequency = omega;
  return s;
}

}  // namespace bench
