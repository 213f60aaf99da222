#pragma once

#include <stdexcept>

#include "cavmesh/cavity_solver.hpp"
#include "cavmesh/isoparam.hpp"

namespace cavmesh {

/// Raised when a layer is too thick for the sampled profile: either the
/// midpoint condition 2 s_half > s1 or the slope condition
/// 4 s_half > 3 s0 + s1 fails, so no angular count can make the interpolant
/// orientation preserving.
struct LayerTooThick : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative strictness used for every strict inequality verdict.
inline constexpr double kStrictnessRel = 1e-12;

struct TypeACheck {
  bool ok;
  double cond_14;  // -3 s0 - s1 cos(pi/n) + 4 s_half cos(pi/2n), must be > 0
  double cond_15;  // cubic combination in cos(pi/2n), must be > 0
};

struct TypeBCheck {
  bool ok;
  double cond_25;  // 2 s0 cos^2(pi/2n) - 4 s_half cos(pi/2n) + s0 + s1, must be < 0
};

/// Exact positivity verdicts for the two element types of a layer with n
/// couples. Both require the midpoint hypothesis 2 s_half > s1 and throw
/// std::invalid_argument naming it when violated. n >= 1.
TypeACheck check_type_a(const RadialSamples& s, int n);
TypeBCheck check_type_b(const RadialSamples& s, int n);

/// Threshold roots governing the minimal angular count:
///   l1  smaller root of   2 s0 z^2 - 4 s_half z + s0 + s1 = 0
///   l2  second (ascending) real root of
///       -6 s1 z^3 + 4 s_half z^2 + (s0 + 9 s1) z - 8 s_half = 0
///   l3  smaller root of   2 s1 z^2 - 4 s_half z + 3 s0 - s1 = 0
/// The combined verdict is cos(pi/2n) > max(l1, l2); l3 <= l1 whenever the
/// slope condition holds, so l3 never binds.
struct Thresholds {
  bool feasible;  // false: slope condition fails and no n exists
  double l1, l2, l3;
  double cos_bound;  // max(l1, l2)
};

Thresholds thresholds(const RadialSamples& s);

/// Combined verdict for both element types; equals
/// check_type_a(s, n).ok && check_type_b(s, n).ok for every n.
bool verdict(const RadialSamples& s, int n);

/// Smallest n >= 2 with cos(pi/(2n)) > cos_bound, robust against the floor of
/// a nearly integer quotient; consistent with verdict's raw comparison.
int minimal_couples(double cos_bound);

/// Everything above bundled for reporting/serialization.
struct ConditionReport {
  double s0, s_half, s1;
  int n;
  double cond_13;  // 2 s_half - s1
  double cond_26;  // 4 s_half - 3 s0 - s1
  double cond_14, cond_15, cond_25;
  bool has_thresholds;
  double l1, l2, l3, cos_bound;
  bool verdict_a, verdict_b, verdict;
};

ConditionReport condition_report(const RadialSamples& s, int n);

/// Smallest n making the undeformed layer map itself orientation preserving
/// (identity profile); depends only on the aspect ratio kappa = eps / tau.
struct MeshValidity {
  int n_hat;
  double l1_hat, l2_hat;
};

MeshValidity mesh_validity(double kappa);
int mesh_validity_n(double kappa);

/// Layer plan: minimal angular counts for the mesh map (n_hat), the
/// interpolated cavity deformation (n_tilde >= n_hat) and the conforming
/// affine comparison (n_affine).
struct LayerPlan {
  double eps, tau, kappa;
  int n_hat, n_tilde, n_affine;
  double l1, l2;          // deformation thresholds
  double cond_13, cond_26;
  double tau_cap;         // thickness cap from the solution
  bool tau_within_cap;
};

/// Plans one layer [eps, eps + tau] of the solved deformation. Requires
/// rho <= eps and eps + tau <= 1; throws LayerTooThick when the sampled
/// profile admits no angular count.
LayerPlan deformation_n(const RadialSolution& sol, double eps, double tau);

/// Smallest n with cos(pi/n) > max(r(eps)/r(eps+tau), eps/(eps+tau)), the
/// conforming affine requirement.
int affine_n(const RadialSolution& sol, double eps, double tau);
int affine_n_identity(double eps, double tau);

}  // namespace cavmesh
