#include "cavmesh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace cavmesh {

void OracleConfig::validate() const {
  if (grid < 16) throw std::invalid_argument("oracle: grid must be >= 16");
  if (!(margin > 0.0)) throw std::invalid_argument("oracle: margin must be positive");
  if (subdivision_depth < 0) throw std::invalid_argument("oracle: negative subdivision depth");
}

QuadPoly det_polynomial(const ControlNet& net) {
  // J(x) = J0 + x1*J1 + x2*J2 with constant matrices; recover them exactly
  // from three evaluations.
  Mat2 j0 = jacobian(net, {0.0, 0.0});
  Mat2 jx = jacobian(net, {1.0, 0.0});
  Mat2 jy = jacobian(net, {0.0, 1.0});
  Mat2 j1{jx.a11 - j0.a11, jx.a12 - j0.a12, jx.a21 - j0.a21, jx.a22 - j0.a22};
  Mat2 j2{jy.a11 - j0.a11, jy.a12 - j0.a12, jy.a21 - j0.a21, jy.a22 - j0.a22};

  auto perm = [](const Mat2& a, const Mat2& b) {
    return a.a11 * b.a22 + b.a11 * a.a22 - a.a12 * b.a21 - b.a12 * a.a21;
  };

  QuadPoly q;
  q.c00 = j0.det();
  q.c10 = perm(j0, j1);
  q.c01 = perm(j0, j2);
  q.c20 = j1.det();
  q.c02 = j2.det();
  q.c11 = perm(j1, j2);
  return q;
}

MinDetResult sample_min_det(const std::function<double(Vec2)>& det_at, const OracleConfig& cfg) {
  cfg.validate();
  int g = cfg.grid;
  MinDetResult out{std::numeric_limits<double>::infinity(), {0.0, 0.0}, 0.0};
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g - i; ++j) {
      Vec2 p{double(i) / g, double(j) / g};
      double v = det_at(p);
      out.max_abs = std::max(out.max_abs, std::fabs(v));
      if (v < out.min_value) {
        out.min_value = v;
        out.argmin = p;
      }
    }
  }
  return out;
}

namespace {

struct SubTriangle {
  Vec2 v0, v1, v2;
};

Certificate certify_rec(const QuadPoly& q, const SubTriangle& t, int depth, int max_depth) {
  auto at = [&](Vec2 p) { return q(p.x, p.y); };
  Vec2 m01 = 0.5 * (t.v0 + t.v1);
  Vec2 m02 = 0.5 * (t.v0 + t.v2);
  Vec2 m12 = 0.5 * (t.v1 + t.v2);

  double q0 = at(t.v0), q1 = at(t.v1), q2 = at(t.v2);
  double q01 = at(m01), q02 = at(m02), q12 = at(m12);

  // any non-positive node value is already a witness
  const std::pair<Vec2, double> probes[] = {{t.v0, q0},  {t.v1, q1},   {t.v2, q2},
                                            {m01, q01},  {m02, q02},   {m12, q12}};
  for (const auto& [p, v] : probes)
    if (v <= 0.0) return {CertOutcome::Counterexample, depth, p, v};

  // quadratic Bernstein coefficients over this triangle
  double b200 = q0, b020 = q1, b002 = q2;
  double b110 = 2.0 * q01 - 0.5 * (q0 + q1);
  double b101 = 2.0 * q02 - 0.5 * (q0 + q2);
  double b011 = 2.0 * q12 - 0.5 * (q1 + q2);
  double lo = std::min({b200, b020, b002, b110, b101, b011});
  if (lo > 0.0) return {CertOutcome::Positive, depth, {}, lo};

  if (depth >= max_depth) return {CertOutcome::Indeterminate, depth, {}, lo};

  SubTriangle kids[4] = {{t.v0, m01, m02}, {m01, t.v1, m12}, {m02, m12, t.v2}, {m01, m12, m02}};
  Certificate out{CertOutcome::Positive, depth, {}, 0.0};
  for (const auto& kid : kids) {
    Certificate c = certify_rec(q, kid, depth + 1, max_depth);
    if (c.outcome == CertOutcome::Counterexample) return c;
    if (c.outcome == CertOutcome::Indeterminate) out.outcome = CertOutcome::Indeterminate;
    out.depth_used = std::max(out.depth_used, c.depth_used);
  }
  return out;
}

}  // namespace

Certificate certify_positive(const QuadPoly& q, const OracleConfig& cfg) {
  cfg.validate();
  SubTriangle whole{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return certify_rec(q, whole, 0, cfg.subdivision_depth);
}

}  // namespace cavmesh
