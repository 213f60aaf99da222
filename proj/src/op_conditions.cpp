#include "cavmesh/op_conditions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cavmesh/detail/rootfind.hpp"

namespace cavmesh {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_midpoint_condition(const RadialSamples& s) {
  s.validate();
  if (!(2.0 * s.s_half - s.s1 > kStrictnessRel * s.s1))
    throw std::invalid_argument(
        "midpoint hypothesis 2*s_half > s1 violated (s_half = " + std::to_string(s.s_half) +
        ", s1 = " + std::to_string(s.s1) + "); the layer is too thick for this profile");
}

void require_count(int n) {
  if (n < 1) throw std::invalid_argument("angular couple count must be >= 1");
}

}  // namespace

int minimal_couples(double cos_bound) {
  if (cos_bound >= 1.0) throw std::runtime_error("cos bound >= 1: no angular count exists");
  if (cos_bound < 0.0) return 2;
  // start one below the floored quotient and walk up on the raw comparison,
  // so rounding of the quotient cannot shift the result
  int n = std::max(2, int(std::floor(std::numbers::pi / (2.0 * std::acos(cos_bound)))) - 1);
  while (!(std::cos(std::numbers::pi / (2.0 * n)) > cos_bound)) ++n;
  return n;
}

TypeACheck check_type_a(const RadialSamples& s, int n) {
  require_midpoint_condition(s);
  require_count(n);
  double c2n = std::cos(std::numbers::pi / (2.0 * n));
  double cn = std::cos(std::numbers::pi / n);
  double tol = kStrictnessRel * s.s1;
  TypeACheck out;
  out.cond_14 = -3.0 * s.s0 - s.s1 * cn + 4.0 * s.s_half * c2n;
  out.cond_15 = -6.0 * s.s1 * c2n * c2n * c2n + 4.0 * s.s_half * c2n * c2n +
                (s.s0 + 9.0 * s.s1) * c2n - 8.0 * s.s_half;
  out.ok = out.cond_14 > tol && out.cond_15 > tol;
  return out;
}

TypeBCheck check_type_b(const RadialSamples& s, int n) {
  require_midpoint_condition(s);
  require_count(n);
  double c2n = std::cos(std::numbers::pi / (2.0 * n));
  double tol = kStrictnessRel * s.s1;
  TypeBCheck out;
  out.cond_25 = 2.0 * s.s0 * c2n * c2n - 4.0 * s.s_half * c2n + s.s0 + s.s1;
  out.ok = out.cond_25 < -tol;
  return out;
}

Thresholds thresholds(const RadialSamples& s) {
  require_midpoint_condition(s);
  Thresholds th{false, kNan, kNan, kNan, kNan};
  double cond_26 = 4.0 * s.s_half - 3.0 * s.s0 - s.s1;
  if (!(cond_26 > kStrictnessRel * s.s1)) return th;

  // Smaller quadratic root via the stable product form. The discriminant
  // 4 s_half^2 - 2 s0 (s0 + s1) is rewritten cancellation-free as
  // 2 s0 (4 s_half - 3 s0 - s1) + 4 (s_half - s0)^2, which keeps full
  // precision for nearly affine profiles (huge aspect ratios).
  double dh = s.s_half - s.s0;
  double disc1 = 2.0 * s.s0 * cond_26 + 4.0 * dh * dh;
  th.l1 = (s.s0 + s.s1) / (2.0 * s.s_half + std::sqrt(disc1));

  auto roots = detail::real_cubic_roots(-6.0 * s.s1, 4.0 * s.s_half, s.s0 + 9.0 * s.s1,
                                        -8.0 * s.s_half);
  if (roots.size() < 2)
    throw std::runtime_error("threshold cubic lost its real root pair (samples " +
                             std::to_string(s.s0) + ", " + std::to_string(s.s_half) + ", " +
                             std::to_string(s.s1) + ")");
  th.l2 = roots[1];

  double disc3 = 16.0 * s.s_half * s.s_half - 8.0 * s.s1 * (3.0 * s.s0 - s.s1);
  double big3 = (4.0 * s.s_half + std::sqrt(disc3)) / (4.0 * s.s1);
  th.l3 = (3.0 * s.s0 - s.s1) / (2.0 * s.s1 * big3);

  th.cos_bound = std::max(th.l1, th.l2);
  th.feasible = true;
  return th;
}

bool verdict(const RadialSamples& s, int n) {
  require_count(n);
  Thresholds th = thresholds(s);
  if (!th.feasible) return false;
  double c2n = std::cos(std::numbers::pi / (2.0 * n));
  return c2n > th.cos_bound;
}

ConditionReport condition_report(const RadialSamples& s, int n) {
  TypeACheck a = check_type_a(s, n);
  TypeBCheck b = check_type_b(s, n);
  Thresholds th = thresholds(s);
  ConditionReport r;
  r.s0 = s.s0;
  r.s_half = s.s_half;
  r.s1 = s.s1;
  r.n = n;
  r.cond_13 = 2.0 * s.s_half - s.s1;
  r.cond_26 = 4.0 * s.s_half - 3.0 * s.s0 - s.s1;
  r.cond_14 = a.cond_14;
  r.cond_15 = a.cond_15;
  r.cond_25 = b.cond_25;
  r.has_thresholds = th.feasible;
  r.l1 = th.l1;
  r.l2 = th.l2;
  r.l3 = th.l3;
  r.cos_bound = th.cos_bound;
  r.verdict_a = a.ok;
  r.verdict_b = b.ok;
  r.verdict = a.ok && b.ok;
  return r;
}

MeshValidity mesh_validity(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("mesh_validity: kappa must be positive");
  // identity profile scaled by the thickness: samples (kappa, kappa+1/2, kappa+1)
  RadialSamples id{kappa, kappa + 0.5, kappa + 1.0};
  Thresholds th = thresholds(id);  // always feasible: the slope condition reduces to tau > 0
  MeshValidity out;
  out.l1_hat = th.l1;
  out.l2_hat = th.l2;
  out.n_hat = minimal_couples(th.cos_bound);
  return out;
}

int mesh_validity_n(double kappa) { return mesh_validity(kappa).n_hat; }

namespace {

int affine_count(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("affine count: radius ratio must lie in (0, 1)");
  // strictness tolerance so an exact algebraic tie like cos(pi/3) = 1/2
  // counts as failing despite round-off in cos
  double bound = ratio + 1e-12 * (1.0 + ratio);
  int n = std::max(2, int(std::floor(std::numbers::pi / std::acos(ratio))) - 1);
  while (!(std::cos(std::numbers::pi / n) > bound)) ++n;
  return n;
}

void require_layer_range(double rho, double eps, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("layer: tau must be positive");
  if (eps < rho - 1e-12 || eps + tau > 1.0 + 1e-12)
    throw std::invalid_argument("layer [" + std::to_string(eps) + ", " +
                                std::to_string(eps + tau) + "] outside the solved annulus");
}

}  // namespace

LayerPlan deformation_n(const RadialSolution& sol, double eps, double tau) {
  require_layer_range(sol.rho(), eps, tau);

  RadialSamples s{sol.r_at(eps), sol.r_at(eps + 0.5 * tau), sol.r_at(eps + tau)};
  double tol = kStrictnessRel * s.s1;

  LayerPlan plan;
  plan.eps = eps;
  plan.tau = tau;
  plan.kappa = eps / tau;
  plan.cond_13 = 2.0 * s.s_half - s.s1;
  plan.cond_26 = 4.0 * s.s_half - 3.0 * s.s0 - s.s1;
  plan.tau_cap = sol.tau_cap(eps);
  plan.tau_within_cap = tau <= plan.tau_cap;

  if (!(plan.cond_13 > tol))
    throw LayerTooThick("layer too thick: 2*r(eps+tau/2) <= r(eps+tau) at eps = " +
                        std::to_string(eps) + ", tau = " + std::to_string(tau) +
                        "; reduce tau below " + std::to_string(plan.tau_cap));
  Thresholds th = thresholds(s);
  if (!th.feasible)
    throw LayerTooThick("layer too thick: 4*r(eps+tau/2) <= 3*r(eps) + r(eps+tau) at eps = " +
                        std::to_string(eps) + ", tau = " + std::to_string(tau) +
                        "; no angular count exists, reduce tau");

  MeshValidity mv = mesh_validity(plan.kappa);
  plan.n_hat = mv.n_hat;
  plan.n_tilde = std::max(mv.n_hat, minimal_couples(th.cos_bound));
  plan.l1 = th.l1;
  plan.l2 = th.l2;
  plan.n_affine = affine_n(sol, eps, tau);
  return plan;
}

int affine_n(const RadialSolution& sol, double eps, double tau) {
  require_layer_range(sol.rho(), eps, tau);
  double ratio = std::max(sol.r_at(eps) / sol.r_at(eps + tau), eps / (eps + tau));
  return affine_count(ratio);
}

int affine_n_identity(double eps, double tau) {
  if (!(eps > 0.0 && tau > 0.0))
    throw std::invalid_argument("affine count: eps and tau must be positive");
  return affine_count(eps / (eps + tau));
}

}  // namespace cavmesh
