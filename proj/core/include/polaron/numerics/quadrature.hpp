#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polaron/error.hpp"

namespace polaron::numerics {

struct QuadratureSpec {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_subdivisions = 4096;
  /// Angular frequency of an oscillatory factor cos(hint * x). When set the
  /// interval is cut at half-period boundaries before adaptive refinement.
  double oscillation_hint = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1_norm = 0.0;
  bool converged = true;
};

namespace detail {

inline void validate_spec(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) && !(spec.abs_tol > 0.0)) {
    throw InvalidArgument("quadrature tolerances must be positive");
  }
  if (spec.max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be >= 1");
}

// A sum of pieces is judged as a whole: a piece with a negligible share of
// the total may miss its own relative target without harming the result.
inline bool meets_tolerance(double error, double l1, const QuadratureSpec& spec) {
  const double tol = std::max(spec.rel_tol, 4.0 * std::numeric_limits<double>::epsilon());
  return error <= std::max(spec.abs_tol, tol * l1) || error == 0.0;
}

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// One 31-point Gauss-Kronrod pass. Boost 1.74 reports the Kronrod-Gauss
// difference in units of the reference interval [-1, 1]; rescale it here.
template <class F>
Segment kronrod_segment(F& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  Segment s{a, b, 0.0, 0.0, 0.0};
  double err = 0.0;
  s.value = Rule::integrate(f, a, b, 0, 0.0, &err, &s.l1);
  s.error = err * 0.5 * (b - a);
  return s;
}

// Globally adaptive bisection: the segment with the largest error estimate
// is split until the summed error meets the tolerance or the segment budget
// is spent. Boost's own recursive driver is not used because its stopping
// test mixes the rescaled and unscaled error.
template <class F>
QuadratureResult integrate_piece(F&& f, double a, double b, const QuadratureSpec& spec) {
  QuadratureResult r;
  if (a == b) return r;
  std::vector<Segment> heap{kronrod_segment(f, a, b)};
  auto totals = [&] {
    r.value = r.error = r.l1_norm = 0.0;
    for (const auto& s : heap) {
      r.value += s.value;
      r.error += s.error;
      r.l1_norm += s.l1;
    }
  };
  totals();
  while (!meets_tolerance(r.error, r.l1_norm, spec) &&
         static_cast<int>(heap.size()) < spec.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;  // interval at machine resolution
    }
    heap.push_back(kronrod_segment(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(kronrod_segment(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end());
    totals();
  }
  r.converged = meets_tolerance(r.error, r.l1_norm, spec);
  return r;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b].
///
/// Non-convergence is reported through `converged` with the best estimate in
/// `value`; use `integrate_or_throw` when failure should abort the caller.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  detail::validate_spec(spec);
  if (!(a < b)) {
    if (a == b) return {};
    throw InvalidArgument("integrate_adaptive requires a < b");
  }
  if (!(spec.oscillation_hint > 0.0)) return detail::integrate_piece(f, a, b, spec);

  const double half_period = std::numbers::pi / spec.oscillation_hint;
  const double span = b - a;
  constexpr double kMaxPieces = 200000.0;
  const double pieces = std::min(kMaxPieces, std::ceil(span / half_period));
  const auto n = static_cast<long>(std::max(1.0, pieces));
  const double h = span / static_cast<double>(n);

  QuadratureResult total;
  QuadratureSpec local = spec;
  local.max_subdivisions = std::max(8, spec.max_subdivisions / 16);
  for (long i = 0; i < n; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = (i + 1 == n) ? b : a + h * static_cast<double>(i + 1);
    const auto piece = detail::integrate_piece(f, lo, hi, local);
    total.value += piece.value;
    total.error += piece.error;
    total.l1_norm += piece.l1_norm;
  }
  total.converged = detail::meets_tolerance(total.error, total.l1_norm, spec);
  return total;
}

/// Integral over consecutive segments [p0,p1], [p1,p2], ... of a sorted list.
template <class F>
QuadratureResult integrate_segments(F&& f, const std::vector<double>& points,
                                    const QuadratureSpec& spec = {}) {
  QuadratureResult total;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) continue;
    const auto piece = integrate_adaptive(f, points[i - 1], points[i], spec);
    total.value += piece.value;
    total.error += piece.error;
    total.l1_norm += piece.l1_norm;
  }
  total.converged = detail::meets_tolerance(total.error, total.l1_norm, spec);
  return total;
}

/// Cauchy principal value of  int_a^b g(x) / (x - pole) dx  for smooth g.
///
/// The largest interval symmetric about the pole is folded onto itself,
/// int_0^h [g(pole + u) - g(pole - u)] / u du, and the remaining one-sided
/// tail carries no singularity.
template <class G>
QuadratureResult integrate_principal_value(G&& g, double a, double b, double pole,
                                           const QuadratureSpec& spec = {}) {
  detail::validate_spec(spec);
  if (!(a < pole && pole < b)) {
    throw InvalidArgument("principal value requires a < pole < b (pole at or beyond an endpoint)");
  }
  const double h = std::min(pole - a, b - pole);
  auto folded = [&](double u) { return (g(pole + u) - g(pole - u)) / u; };
  QuadratureSpec inner = spec;
  inner.oscillation_hint = 0.0;
  auto result = integrate_adaptive(folded, 0.0, h, inner);

  const double lo = pole - a > b - pole ? a : pole + h;
  const double hi = pole - a > b - pole ? pole - h : b;
  if (hi > lo) {
    // The tail peaks like 1 / (x - pole) at its near end; grade toward it.
    std::vector<double> pts{lo, hi};
    for (double dist = 4.0 * h; pole - dist > a || pole + dist < b; dist *= 4.0) {
      const double x = pole - a > b - pole ? pole - dist : pole + dist;
      if (x > lo && x < hi) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    auto tail = integrate_segments([&](double x) { return g(x) / (x - pole); }, pts, inner);
    result.value += tail.value;
    result.error += tail.error;
    result.l1_norm += tail.l1_norm;
  }
  result.converged = detail::meets_tolerance(result.error, result.l1_norm, spec);
  return result;
}

/// Unwraps a result, turning non-convergence into NumericalError.
inline double value_or_throw(const QuadratureResult& r, const char* what) {
  if (!r.converged || !std::isfinite(r.value)) {
    throw NumericalError(std::string(what) + ": quadrature did not converge", r.value);
  }
  return r.value;
}

}  // namespace polaron::numerics
