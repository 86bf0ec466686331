#pragma once

namespace polaron {

/// CODATA 2018 values in SI units.
struct PhysicalConstants {
  double hbar;          // J s
  double k_B;           // J / K
  double bohr_radius;   // m
};

const PhysicalConstants& constants();

namespace units {
inline constexpr double kHz = 1.0e3;
inline constexpr double micro = 1.0e-6;
}  // namespace units

}  // namespace polaron
