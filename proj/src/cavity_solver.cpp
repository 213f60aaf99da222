#include "cavmesh/cavity_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavmesh/detail/rootfind.hpp"

namespace cavmesh {

void CavityProblem::validate() const {
  params.validate();
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("cavity problem: rho must lie in (0, 1)");
  if (!(lambda > 1.0))
    throw std::invalid_argument("cavity problem: lambda must exceed 1");
}

double residual_natural_bc(double r_rho, double rp_rho, const CavityProblem& problem) {
  const auto& mp = problem.params;
  double rho = problem.rho;
  if (!(r_rho > 0.0) || !(rp_rho > 0.0))
    throw std::domain_error("residual_natural_bc: state must be positive");
  double v2 = r_rho / rho;
  double s = rp_rho * rp_rho + v2 * v2;
  double d = v2 * rp_rho;
  return mp.omega * mp.p * std::pow(s, 0.5 * mp.p - 1.0) * rp_rho * rho / r_rho +
         g_prime(d, mp);
}

double rhs_second_order(double R, double r, double r_prime, const MaterialParams& mp) {
  if (!(R > 0.0) || !(r > 0.0) || !(r_prime > 0.0))
    throw std::domain_error("rhs_second_order: state must be positive");
  double v1 = r_prime;
  double v2 = r / R;
  double s = v1 * v1 + v2 * v2;
  double d = v1 * v2;
  double sp2 = std::pow(s, 0.5 * mp.p - 2.0);
  // The g' contributions of Phi_2 - Phi_1 and Phi_12 cancel, leaving a
  // strictly positive factor P multiplying (v2 - v1).
  double P = mp.omega * mp.p * sp2 * (s + (mp.p - 2.0) * d) + d * g_second(d, mp);
  double phi11 =
      mp.omega * mp.p * sp2 * ((mp.p - 1.0) * v1 * v1 + v2 * v2) + v2 * v2 * g_second(d, mp);
  if (!(phi11 > 0.0))
    throw std::runtime_error("rhs_second_order: Phi_11 not positive (invariant violated)");
  return (v2 - v1) * P / (R * phi11);
}

namespace {

struct OdeState {
  double r;
  double rp;
};

OdeState rk4_step(double R, OdeState y, double h, const MaterialParams& mp) {
  auto f = [&](double t, OdeState s) -> OdeState {
    return {s.rp, rhs_second_order(t, s.r, s.rp, mp)};
  };
  OdeState k1 = f(R, y);
  OdeState k2 = f(R + 0.5 * h, {y.r + 0.5 * h * k1.r, y.rp + 0.5 * h * k1.rp});
  OdeState k3 = f(R + 0.5 * h, {y.r + 0.5 * h * k2.r, y.rp + 0.5 * h * k2.rp});
  OdeState k4 = f(R + h, {y.r + h * k3.r, y.rp + h * k3.rp});
  return {y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
          y.rp + h / 6.0 * (k1.rp + 2.0 * k2.rp + 2.0 * k3.rp + k4.rp)};
}

/// r'(rho) solving the traction-free condition for a given trial r(rho).
double slave_rp(double a, const CavityProblem& problem) {
  auto f = [&](double rp) { return residual_natural_bc(a, rp, problem); };
  return detail::solve_increasing(f, 0.0, 1.0, 1e-14);
}

/// Geometrically graded grid from rho to 1 (denser near rho).
std::vector<double> graded_grid(double rho, int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = std::pow(rho, 1.0 - double(i) / n);
  g.front() = rho;
  g.back() = 1.0;
  return g;
}

struct Trajectory {
  std::vector<double> r, rp;
};

Trajectory integrate(double a, const CavityProblem& problem, const std::vector<double>& grid) {
  Trajectory t;
  t.r.resize(grid.size());
  t.rp.resize(grid.size());
  OdeState y{a, slave_rp(a, problem)};
  t.r[0] = y.r;
  t.rp[0] = y.rp;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    y = rk4_step(grid[i], y, grid[i + 1] - grid[i], problem.params);
    if (!std::isfinite(y.r) || !std::isfinite(y.rp) || y.r <= 0.0 || y.rp <= 0.0)
      throw SolverError("cavity solve: integration left the admissible region");
    t.r[i + 1] = y.r;
    t.rp[i + 1] = y.rp;
  }
  return t;
}

}  // namespace

RadialSolution RadialSolution::from_table(std::vector<double> grid, std::vector<double> r,
                                          std::vector<double> r_prime,
                                          std::vector<double> r_second, double rho,
                                          double lambda, const MaterialParams& params) {
  std::size_t n = grid.size();
  if (n < 2 || r.size() != n || r_prime.size() != n || r_second.size() != n)
    throw std::invalid_argument("radial solution: inconsistent table sizes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(grid[i] < grid[i + 1]) || !(r[i] < r[i + 1]))
      throw std::invalid_argument("radial solution: grid and r must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i)
    if (!(r_prime[i] > 0.0))
      throw std::invalid_argument("radial solution: r' must be positive");

  RadialSolution out;
  out.grid_ = std::move(grid);
  out.r_ = std::move(r);
  out.rp_ = std::move(r_prime);
  out.rpp_ = std::move(r_second);
  out.params_ = params;
  out.rho_ = rho;
  out.lambda_ = lambda;
  out.r_c_ = out.r_.front();

  out.m_ = std::numeric_limits<double>::infinity();
  out.M_ = 0.0;
  out.max_rpp_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ratio = out.rp_[i] / out.grid_[i];
    out.m_ = std::min(out.m_, ratio);
    out.M_ = std::max(out.M_, ratio);
    out.max_rpp_ = std::max(out.max_rpp_, out.rpp_[i]);
  }

  // |r'''| estimated by divided differences of the tabulated r''.
  out.q_ = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double d3 = (out.rpp_[i + 1] - out.rpp_[i]) / (out.grid_[i + 1] - out.grid_[i]);
    out.q_ = std::max(out.q_, std::fabs(d3));
  }

  // Hermite slopes; the r interpolant is clamped into the monotone box
  // 0 <= slope <= 3 * min(adjacent secants).
  out.slope_r_ = out.rp_;
  for (std::size_t i = 0; i < n; ++i) {
    double cap = std::numeric_limits<double>::infinity();
    if (i > 0) cap = std::min(cap, 3.0 * (out.r_[i] - out.r_[i - 1]) / (out.grid_[i] - out.grid_[i - 1]));
    if (i + 1 < n) cap = std::min(cap, 3.0 * (out.r_[i + 1] - out.r_[i]) / (out.grid_[i + 1] - out.grid_[i]));
    out.slope_r_[i] = std::clamp(out.slope_r_[i], 0.0, cap);
  }
  out.slope_rp_ = out.rpp_;
  return out;
}

namespace {

double hermite(double t, double x0, double x1, double y0, double y1, double d0, double d1) {
  double h = x1 - x0;
  double u = (t - x0) / h;
  double u2 = u * u;
  double u3 = u2 * u;
  return y0 * (2.0 * u3 - 3.0 * u2 + 1.0) + y1 * (-2.0 * u3 + 3.0 * u2) +
         h * d0 * (u3 - 2.0 * u2 + u) + h * d1 * (u3 - u2);
}

double hermite_deriv(double t, double x0, double x1, double y0, double y1, double d0, double d1) {
  double h = x1 - x0;
  double u = (t - x0) / h;
  double u2 = u * u;
  return (y0 * (6.0 * u2 - 6.0 * u) + y1 * (-6.0 * u2 + 6.0 * u)) / h +
         d0 * (3.0 * u2 - 4.0 * u + 1.0) + d1 * (3.0 * u2 - 2.0 * u);
}

}  // namespace

RadialSolution::Sample RadialSolution::sample(double t) const {
  double lo = grid_.front(), hi = grid_.back();
  // allow round-off drift from node constructions like hypot(cos, sin)
  if (t > hi && t <= hi * (1.0 + 1e-12)) t = hi;
  if (t < lo && t >= lo * (1.0 - 1e-12)) t = lo;
  if (!(t >= lo && t <= hi))
    throw std::out_of_range("radial solution: sample point " + std::to_string(t) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  std::size_t i = (it == grid_.begin()) ? 0 : std::size_t(it - grid_.begin()) - 1;
  if (i + 1 >= grid_.size()) i = grid_.size() - 2;

  Sample s;
  if (t == grid_[i]) {  // exact at nodes
    s.r = r_[i];
    s.r_prime = rp_[i];
    s.r_second = rpp_[i];
    return s;
  }
  s.r = hermite(t, grid_[i], grid_[i + 1], r_[i], r_[i + 1], slope_r_[i], slope_r_[i + 1]);
  s.r_prime = hermite(t, grid_[i], grid_[i + 1], rp_[i], rp_[i + 1], slope_rp_[i], slope_rp_[i + 1]);
  s.r_second =
      hermite_deriv(t, grid_[i], grid_[i + 1], rp_[i], rp_[i + 1], slope_rp_[i], slope_rp_[i + 1]);
  return s;
}

double RadialSolution::tau_cap(double eps) const {
  double cap = 1.0 - eps;
  if (max_rpp_ > 0.0) cap = std::min(cap, std::sqrt(2.0 * r_c_ / max_rpp_));
  return cap;
}

RadialSolution solve(const CavityProblem& problem, int grid_size) {
  problem.validate();
  if (grid_size < 100) throw std::invalid_argument("cavity solve: grid_size must be >= 100");

  auto grid = graded_grid(problem.rho, grid_size);
  auto miss = [&](double a) { return integrate(a, problem, grid).r.back() - problem.lambda; };

  // r(1) grows with r(rho); a = lambda always overshoots since r is
  // increasing in R.
  double a_hi = problem.lambda;
  double f_hi = miss(a_hi);
  if (!(f_hi > 0.0)) throw SolverError("cavity solve: upper shooting bound does not overshoot");

  double a_lo = 0.5 * problem.lambda;
  double f_lo = miss(a_lo);
  int halvings = 0;
  while (f_lo > 0.0 && halvings < 60) {
    a_hi = a_lo;
    f_hi = f_lo;
    a_lo *= 0.5;
    f_lo = miss(a_lo);
    ++halvings;
  }
  if (f_lo > 0.0)
    throw SolverError("no cavity solution found: shooting residual has no sign change "
                      "(lambda may be below the cavitation threshold)");

  for (int it = 0; it < 200 && (a_hi - a_lo) > 1e-13; ++it) {
    double mid = 0.5 * (a_lo + a_hi);
    double fm = miss(mid);
    if (fm > 0.0) {
      a_hi = mid;
      f_hi = fm;
    } else {
      a_lo = mid;
      f_lo = fm;
    }
  }

  double a = 0.5 * (a_lo + a_hi);
  auto traj = integrate(a, problem, grid);
  if (std::fabs(traj.r.back() - problem.lambda) > 1e-8)
    throw SolverError("cavity solve: shooting did not reach the boundary stretch to 1e-8");

  std::vector<double> rpp(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rpp[i] = rhs_second_order(grid[i], traj.r[i], traj.rp[i], problem.params);

  return RadialSolution::from_table(grid, traj.r, traj.rp, rpp, problem.rho, problem.lambda,
                                    problem.params);
}

GDerivedRoots g_roots_for(const RadialSolution& sol) {
  double d0_plus = 0.0;
  for (std::size_t i = 0; i < sol.grid().size(); ++i)
    d0_plus = std::max(d0_plus, sol.r()[i] * sol.r_prime()[i] / sol.grid()[i]);
  return g_roots(sol.params(), sol.r_c(), d0_plus);
}

double cauchy_stress(const RadialSolution& sol, std::size_t i) {
  double R = sol.grid()[i];
  auto pp = phi_partials(sol.r_prime()[i], sol.r()[i] / R, sol.params());
  return R / sol.r()[i] * pp.p1;
}

}  // namespace cavmesh
