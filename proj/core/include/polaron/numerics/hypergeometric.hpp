#pragma once

namespace polaron::numerics {

struct Hyp1F2Result {
  enum class Method { Series, Integral };
  double value = 0.0;
  int terms = 0;
  bool converged = false;
  Method method = Method::Series;
};

/// Generalized hypergeometric 1F2(a; b1, b2; z) for z <= 0.
///
/// The power series is summed until the term ratio drops below 1e-12. For
/// |z| > 20 the alternating series loses too many digits; when the
/// parameters belong to the family 1F2(a; 1/2, a + 1; -x^2/4) the function is
/// evaluated through 2a int_0^1 u^(2a-1) cos(x u) du instead. Outside that
/// family a large argument is reported as not converged.
Hyp1F2Result hyp1f2(double a, double b1, double b2, double z);

}  // namespace polaron::numerics
