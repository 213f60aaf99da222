#include "cavmesh/detail/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace cavmesh::detail {

namespace {

double eval_cubic(double c3, double c2, double c1, double c0, double x) {
  return ((c3 * x + c2) * x + c1) * x + c0;
}

}  // namespace

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
  std::vector<double> roots;
  if (c3 == 0.0) {
    // quadratic fallback
    if (c2 == 0.0) {
      if (c1 != 0.0) roots.push_back(-c0 / c1);
      return roots;
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return roots;
    double s = std::sqrt(disc);
    double q = -0.5 * (c1 + (c1 >= 0.0 ? s : -s));
    roots.push_back(q / c2);
    if (q != 0.0) roots.push_back(c0 / q);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  auto p = [&](double x) { return eval_cubic(c3, c2, c1, c0, x); };

  // Cauchy bound on root magnitude.
  double bound = 1.0 + std::max({std::fabs(c2), std::fabs(c1), std::fabs(c0)}) / std::fabs(c3);

  // Critical points of the cubic split the line into monotone pieces.
  std::vector<double> knots{-bound};
  double da = 3.0 * c3, db = 2.0 * c2, dc = c1;
  double ddisc = db * db - 4.0 * da * dc;
  if (ddisc > 0.0) {
    double s = std::sqrt(ddisc);
    double q = -0.5 * (db + (db >= 0.0 ? s : -s));
    double t1 = q / da;
    double t2 = (q != 0.0) ? dc / q : t1;
    if (t1 > t2) std::swap(t1, t2);
    if (t1 > -bound && t1 < bound) knots.push_back(t1);
    if (t2 > -bound && t2 < bound) knots.push_back(t2);
  }
  knots.push_back(bound);

  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double lo = knots[i], hi = knots[i + 1];
    double flo = p(lo), fhi = p(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (i + 2 == knots.size() && fhi == 0.0) roots.push_back(hi);
    if ((flo > 0.0) == (fhi > 0.0)) continue;
    double tol = 1e-15 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    roots.push_back(bisect(p, lo, hi, tol));
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::fabs(a - b) <= 1e-13 * std::max(1.0, std::fabs(a));
                          }),
              roots.end());
  return roots;
}

}  // namespace cavmesh::detail
