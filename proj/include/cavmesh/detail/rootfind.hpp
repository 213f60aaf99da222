#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cavmesh::detail {

/// Bisection on [lo, hi] assuming f(lo) and f(hi) have opposite signs.
/// Refines until the bracket width drops below tol (absolute).
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("bisect: no sign change in bracket");
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Finds x with f(x) = target for strictly increasing f on (0, inf) by
/// doubling/halving from the initial guess until a sign change appears.
template <class F>
double solve_increasing(F&& f, double target, double guess, double tol) {
  auto h = [&](double x) { return f(x) - target; };
  double lo = guess, hi = guess;
  double v = h(guess);
  if (v < 0.0) {
    for (int it = 0; it < 400 && h(hi) < 0.0; ++it) hi *= 2.0;
    if (h(hi) < 0.0) throw std::runtime_error("solve_increasing: no upper bracket");
  } else {
    for (int it = 0; it < 400 && h(lo) > 0.0; ++it) lo *= 0.5;
    if (h(lo) > 0.0) throw std::runtime_error("solve_increasing: no lower bracket");
  }
  return bisect(h, lo, hi, tol);
}

/// All real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending. Roots are
/// isolated by the critical points of the cubic and refined by bisection, so
/// nearly coincident root pairs are still separated correctly.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace cavmesh::detail
