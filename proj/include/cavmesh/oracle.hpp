#pragma once

#include <functional>

#include "cavmesh/geometry.hpp"
#include "cavmesh/isoparam.hpp"

namespace cavmesh {

struct OracleConfig {
  int grid = 200;                // samples per axis of the triangular lattice
  double margin = 1e-10;         // relative |det| below which a sign is not decisive
  int subdivision_depth = 12;    // max recursion for certificates

  void validate() const;
};

/// Bivariate polynomial of total degree <= 2 over the reference triangle:
/// c00 + c10 x1 + c01 x2 + c20 x1^2 + c11 x1 x2 + c02 x2^2.
struct QuadPoly {
  double c00 = 0, c10 = 0, c01 = 0, c20 = 0, c11 = 0, c02 = 0;

  double operator()(double x1, double x2) const {
    return c00 + c10 * x1 + c01 * x2 + c20 * x1 * x1 + c11 * x1 * x2 + c02 * x2 * x2;
  }
};

/// Exact coefficients of det(jacobian) of a quadratic map: the Jacobian is
/// affine in the reference coordinates, so the determinant expands through
/// the polarization of det into the six monomial coefficients.
QuadPoly det_polynomial(const ControlNet& net);

struct MinDetResult {
  double min_value;
  Vec2 argmin;
  double max_abs;  // scale for relative margins
};

/// Minimum over the uniform lattice {(i/g, j/g) : i + j <= g}, which contains
/// all three edges and vertices of the reference triangle.
MinDetResult sample_min_det(const std::function<double(Vec2)>& det_at, const OracleConfig& cfg);

enum class CertOutcome { Positive, Counterexample, Indeterminate };

struct Certificate {
  CertOutcome outcome;
  int depth_used = 0;
  Vec2 witness{};        // point with value <= 0 when outcome == Counterexample
  double witness_value = 0.0;
};

/// Recursive Bernstein-coefficient positivity certificate on the reference
/// triangle: on each sub-triangle the six quadratic Bernstein coefficients
/// bound the polynomial, so all-positive coefficients certify positivity and
/// a non-positive node value is a concrete counterexample. Subdivides through
/// edge midpoints up to cfg.subdivision_depth; unresolved regions yield
/// Indeterminate.
Certificate certify_positive(const QuadPoly& q, const OracleConfig& cfg);

}  // namespace cavmesh
