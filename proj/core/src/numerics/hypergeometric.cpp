#include "polaron/numerics/hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polaron/error.hpp"
#include "polaron/numerics/quadrature.hpp"

namespace polaron::numerics {
namespace {

constexpr double kSeriesLimit = 20.0;
constexpr double kTermRatio = 1e-12;
constexpr int kMaxTerms = 2000;

Hyp1F2Result series(double a, double b1, double b2, double z) {
  Hyp1F2Result r;
  long double term = 1.0L;
  long double sum = 1.0L;
  long double largest = 1.0L;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (static_cast<long double>(a) + n) * z /
            ((static_cast<long double>(b1) + n) * (static_cast<long double>(b2) + n) * (n + 1));
    sum += term;
    largest = std::max(largest, std::fabs(term));
    r.terms = n + 1;
    if (std::fabs(term) <= kTermRatio * std::fabs(sum) || term == 0.0L) {
      r.converged = true;
      break;
    }
  }
  // Cancellation in the alternating sum costs log10(largest / |sum|) digits.
  if (r.converged && sum != 0.0L &&
      largest / std::fabs(sum) * 1e-18L > static_cast<long double>(kTermRatio)) {
    r.converged = false;
  }
  r.value = static_cast<double>(sum);
  return r;
}

bool in_cosine_family(double a, double b1, double b2) {
  return a > 0.0 && std::abs(b1 - 0.5) < 1e-15 && std::abs(b2 - (a + 1.0)) < 1e-13;
}

Hyp1F2Result cosine_integral(double a, double z) {
  const double x = 2.0 * std::sqrt(-z);
  QuadratureSpec spec;
  // The phase x*u carries an absolute rounding error of order eps*x.
  spec.rel_tol = std::max(1e-13, 64.0 * std::numeric_limits<double>::epsilon() * x);
  spec.oscillation_hint = x;
  auto integrand = [&](double u) { return std::pow(u, 2.0 * a - 1.0) * std::cos(x * u); };
  const auto q = integrate_adaptive(integrand, 0.0, 1.0, spec);
  Hyp1F2Result r;
  r.value = 2.0 * a * q.value;
  r.converged = q.converged;
  r.method = Hyp1F2Result::Method::Integral;
  return r;
}

}  // namespace

Hyp1F2Result hyp1f2(double a, double b1, double b2, double z) {
  if (z > 0.0) throw InvalidArgument("hyp1f2 is implemented for z <= 0");
  if (z == 0.0) return {1.0, 0, true, Hyp1F2Result::Method::Series};
  if (-z > kSeriesLimit && in_cosine_family(a, b1, b2)) return cosine_integral(a, z);
  return series(a, b1, b2, z);
}

}  // namespace polaron::numerics
