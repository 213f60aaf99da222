#pragma once

#include <cmath>

namespace cavmesh {

/// Compressible stored-energy density in terms of the two singular values,
///   Phi(v1, v2) = omega * (v1^2 + v2^2)^(p/2) + g(v1 * v2),
/// with the volumetric part g(d) = c1 * (d - 1)^2 / 2 + c2 / d.
///
/// Defaults are the experiment values p = 3/2, omega = 2/3,
/// c1 = c2 = 2^(-1/4).
struct MaterialParams {
  double p = 1.5;
  double omega = 2.0 / 3.0;
  double c1 = 0.8408964152537146;  // 2^(-1/4)
  double c2 = 0.8408964152537146;

  /// Throws std::invalid_argument unless 1 < p < 2, omega > 0, c1 > 0, c2 > 0.
  void validate() const;
};

double g_value(double d, const MaterialParams& mp);
double g_prime(double d, const MaterialParams& mp);
double g_second(double d, const MaterialParams& mp);

/// Energy density at singular values (v1, v2). Throws std::domain_error for
/// non-positive singular values.
double phi(double v1, double v2, const MaterialParams& mp);

/// First and second partial derivatives of Phi needed by the radial solver.
/// p11 > 0 for every admissible state of this family.
struct PhiPartials {
  double p1;   // dPhi/dv1
  double p2;   // dPhi/dv2
  double p11;  // d2Phi/dv1^2
  double p12;  // d2Phi/dv1 dv2
};

PhiPartials phi_partials(double v1, double v2, const MaterialParams& mp);

/// Scalar roots of g' characterising the admissible range of the local
/// Jacobian d = r r' / R along a cavity solution:
///   d0       unique root of g'(d) = 0,
///   d_minus  root of g'(d) = -omega p r_c^(p-2), below d0,
///   d_plus   root of g'(d) = g'(d0_plus) + omega p r_c^(p-2).
struct GDerivedRoots {
  double d0;
  double d_minus;
  double d_plus;
};

/// Bracketed bisection on the monotone g', absolute tolerance 1e-12.
/// Throws std::domain_error on invalid inputs and std::runtime_error if the
/// resulting roots do not satisfy 0 < d_minus < d0 < d_plus.
GDerivedRoots g_roots(const MaterialParams& mp, double r_c, double d0_plus);

}  // namespace cavmesh
