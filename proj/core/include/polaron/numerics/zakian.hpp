#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polaron/error.hpp"

namespace polaron::numerics {

/// Weights k_j and nodes Xi_j of the Zakian inverse Laplace sum
///
///   f(t) ~ (2/t) sum_j Re[k_j F(Xi_j / t)].
///
/// The nodes are the upper-half-plane poles of the [2N-1 / 2N] Pade
/// approximant of exp(s) and the weights the corresponding residues (with
/// sign flipped). N = 5 reproduces Zakian's published table.
struct ZakianConstants {
  std::vector<std::complex<double>> weights;
  std::vector<std::complex<double>> nodes;

  int order() const { return static_cast<int>(nodes.size()); }

  /// Tabulated orders are 5 through 8.
  static const ZakianConstants& of_order(int n);
  /// Order used by the propagator pipeline (7).
  static const ZakianConstants& standard();
};

/// Maximum deviation of the inverted unit step from 1 on t in [0.1, 10].
double unit_step_deviation(const ZakianConstants& consts);

/// Throws NumericalError when the unit-step self-test exceeds `tolerance`.
void validate(const ZakianConstants& consts, double tolerance = 1e-6);

template <class F>
double zakian_invert(F&& laplace, double t, const ZakianConstants& consts = ZakianConstants::standard()) {
  if (!(t > 0.0)) throw InvalidArgument("zakian_invert requires t > 0");
  double sum = 0.0;
  for (std::size_t j = 0; j < consts.nodes.size(); ++j) {
    const std::complex<double> value = laplace(consts.nodes[j] / t);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw NumericalError("Laplace transform not finite at a Zakian node");
    }
    sum += (consts.weights[j] * value).real();
  }
  return 2.0 * sum / t;
}

}  // namespace polaron::numerics
