#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cavmesh/material.hpp"

namespace cavmesh {

/// Raised when shooting cannot bracket a cavity branch or the integration
/// produces non-finite states.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Traction-free annulus B_1 \ B_rho stretched to lambda * x on the outer
/// boundary.
struct CavityProblem {
  MaterialParams params;
  double rho = 0.01;
  double lambda = 2.0;

  void validate() const;
};

/// Tabulated radial deformation r(R) on [rho, 1] together with the measured
/// constants used by the layer-planning conditions:
///   r_c            cavity surface radius r(rho) (the minimum of r),
///   m, M           min/max of r'(R)/R over the grid,
///   max_r_second   max of r'' over the grid,
///   Q              finite-difference bound on |r'''|.
///
/// Immutable after construction; sampling is thread-safe.
class RadialSolution {
 public:
  /// Builds the derived quantities and interpolants from tabulated data.
  /// The grid must be strictly increasing from rho to 1, r increasing,
  /// r' positive. Used by the solver, file import, and synthetic tables.
  static RadialSolution from_table(std::vector<double> grid, std::vector<double> r,
                                   std::vector<double> r_prime, std::vector<double> r_second,
                                   double rho, double lambda, const MaterialParams& params);

  struct Sample {
    double r;
    double r_prime;
    double r_second;
  };

  /// Monotone cubic interpolation, exact at grid points. Throws
  /// std::out_of_range outside [rho, 1].
  Sample sample(double t) const;
  double r_at(double t) const { return sample(t).r; }

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& r_prime() const { return rp_; }
  const std::vector<double>& r_second() const { return rpp_; }
  const MaterialParams& params() const { return params_; }

  double rho() const { return rho_; }
  double lambda() const { return lambda_; }
  double r_c() const { return r_c_; }
  double m() const { return m_; }
  double M() const { return M_; }
  double max_r_second() const { return max_rpp_; }
  double Q() const { return q_; }

  /// Thickness cap min(1 - eps, sqrt(2 r_c / max r'')) under which the layer
  /// midpoint condition 2 r_half > r1 is guaranteed.
  double tau_cap(double eps) const;

 private:
  RadialSolution() = default;

  std::vector<double> grid_, r_, rp_, rpp_;
  std::vector<double> slope_r_, slope_rp_;  // interpolation slopes
  MaterialParams params_;
  double rho_ = 0.0, lambda_ = 0.0;
  double r_c_ = 0.0, m_ = 0.0, M_ = 0.0, max_rpp_ = 0.0, q_ = 0.0;
};

/// Residual of the traction-free condition at the cavity surface for a trial
/// state (r(rho), r'(rho)). Strictly increasing in r'(rho).
double residual_natural_bc(double r_rho, double rp_rho, const CavityProblem& problem);

/// Right-hand side r'' of the radial equilibrium ODE written in the
/// cancellation-free form
///   r'' = (r/R - r') * P(r', r/R) / (R * Phi_11),
/// which is exact for homogeneous states (r = c R gives r'' = 0).
double rhs_second_order(double R, double r, double r_prime, const MaterialParams& mp);

/// Shooting solve: bisects on a = r(rho) with r'(rho) recovered from the
/// traction-free condition, integrating with a classical 4th-order step on a
/// geometrically graded grid (denser near rho) until |r(1) - lambda| < 1e-8.
RadialSolution solve(const CavityProblem& problem, int grid_size = 2000);

/// Material roots evaluated for a solved cavity branch, taking d0_plus as the
/// measured max of d(R) = r r' / R over the grid.
GDerivedRoots g_roots_for(const RadialSolution& sol);

/// Radial Cauchy stress T(R) = (R / r) * Phi_1(r', r/R) at grid index i.
double cauchy_stress(const RadialSolution& sol, std::size_t i);

}  // namespace cavmesh
