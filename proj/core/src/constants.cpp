#include "polaron/constants.hpp"

namespace polaron {

const PhysicalConstants& constants() {
  static constexpr PhysicalConstants kCodata2018{
      1.054571817e-34,   // reduced Planck constant (exact)
      1.380649e-23,      // Boltzmann constant (exact)
      5.29177210903e-11  // Bohr radius
  };
  return kCodata2018;
}

}  // namespace polaron
