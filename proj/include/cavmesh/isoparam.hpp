#pragma once

#include <array>

#include "cavmesh/geometry.hpp"

namespace cavmesh {

// Quadratic Lagrange basis on the unit reference triangle with vertices
// (0,0), (1,0), (0,1). Vertex functions are lam*(2*lam - 1), edge functions
// 4*lam_i*lam_j; order: v1, v2, v3, e12, e13, e23. The basis is a partition
// of unity and dual to evaluation at the six nodes.
namespace ref {

std::array<double, 6> basis(double x1, double x2);
std::array<Vec2, 6> basis_grad(double x1, double x2);

/// The six reference nodes in basis order.
std::array<Vec2, 6> nodes();

}  // namespace ref

/// Control points of one quadratic triangle, basis order
/// (a1, a2, a3, a12, a13, a23).
struct ControlNet {
  std::array<Vec2, 6> pts{};
};

/// Quadratic geometry map evaluated at a reference point.
Vec2 map_point(const ControlNet& net, Vec2 xhat);

/// Exact Jacobian of the quadratic map; its determinant is a polynomial of
/// degree <= 2 in the reference coordinates.
Mat2 jacobian(const ControlNet& net, Vec2 xhat);

/// Radial profile sampled at the inner radius, mid-thickness and outer
/// radius of one annulus layer.
struct RadialSamples {
  double s0 = 0.0;      // s(eps)
  double s_half = 0.0;  // s(eps + tau/2)
  double s1 = 0.0;      // s(eps + tau)

  double kappa0() const { return s0 / s1; }
  double kappa_half() const { return s_half / s1; }

  /// Throws std::invalid_argument unless all three samples are positive.
  void validate() const;
};

/// Closed-form coefficients of the interpolated radial deformation on a
/// representative element whose single vertex on the inner circle points
/// outward (type A). For an increasing convex profile beta < 0.
struct JacobianFormA {
  double alpha1, alpha2, alpha3, beta, gamma;
  double s0, s_half, s1;
  int n;
};

/// Barred analogue for the element whose single vertex on the outer circle
/// points inward (type B). For an increasing convex profile gamma < 0 and
/// alpha3 > 0.
struct JacobianFormB {
  double alpha1, alpha2, alpha3, beta, gamma;
  double s0, s_half, s1;
  int n;
};

/// Coefficients of the interpolant of a radially symmetric deformation on the
/// two representative elements of a layer with n couples. Requires n >= 2.
JacobianFormA interp_radial_a(const RadialSamples& s, int n);
JacobianFormB interp_radial_b(const RadialSamples& s, int n);

/// Jacobian determinant of the interpolant in the symmetric coordinates
/// y = x1 + x2, z = x1 * x2. The closed forms are homogeneous of degree 2 in
/// the samples and agree with the generic differentiation of the quadratic
/// map through the deformed control points.
double det_h_a(const JacobianFormA& f, double y, double z);
double det_h_b(const JacobianFormB& f, double y, double z);

/// Control nets of the representative elements: type A has its inner vertex
/// on the positive x-axis, type B its outer vertex. Radial symmetry makes
/// this placement lossless for the positivity analysis.
ControlNet representative_net_a(const RadialSamples& s, int n);
ControlNet representative_net_b(const RadialSamples& s, int n);

}  // namespace cavmesh
