#include "cavmesh/material.hpp"

#include <stdexcept>
#include <string>

#include "cavmesh/detail/rootfind.hpp"

namespace cavmesh {

void MaterialParams::validate() const {
  if (!(p > 1.0 && p < 2.0))
    throw std::invalid_argument("material: exponent p must satisfy 1 < p < 2, got " +
                                std::to_string(p));
  if (!(omega > 0.0)) throw std::invalid_argument("material: omega must be positive");
  if (!(c1 > 0.0)) throw std::invalid_argument("material: c1 must be positive");
  if (!(c2 > 0.0)) throw std::invalid_argument("material: c2 must be positive");
}

namespace {

void require_positive(double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0))
    throw std::domain_error("material: singular values must be positive, got (" +
                            std::to_string(v1) + ", " + std::to_string(v2) + ")");
}

}  // namespace

double g_value(double d, const MaterialParams& mp) {
  if (!(d > 0.0)) throw std::domain_error("material: g requires d > 0");
  double e = d - 1.0;
  return 0.5 * mp.c1 * e * e + mp.c2 / d;
}

double g_prime(double d, const MaterialParams& mp) {
  if (!(d > 0.0)) throw std::domain_error("material: g' requires d > 0");
  return mp.c1 * (d - 1.0) - mp.c2 / (d * d);
}

double g_second(double d, const MaterialParams& mp) {
  if (!(d > 0.0)) throw std::domain_error("material: g'' requires d > 0");
  return mp.c1 + 2.0 * mp.c2 / (d * d * d);
}

double phi(double v1, double v2, const MaterialParams& mp) {
  require_positive(v1, v2);
  double s = v1 * v1 + v2 * v2;
  return mp.omega * std::pow(s, 0.5 * mp.p) + g_value(v1 * v2, mp);
}

PhiPartials phi_partials(double v1, double v2, const MaterialParams& mp) {
  require_positive(v1, v2);
  double s = v1 * v1 + v2 * v2;
  double d = v1 * v2;
  double sp1 = std::pow(s, 0.5 * mp.p - 1.0);  // s^(p/2-1)
  double sp2 = sp1 / s;                        // s^(p/2-2)
  double gp = g_prime(d, mp);
  double gpp = g_second(d, mp);
  double wp = mp.omega * mp.p;

  PhiPartials out;
  out.p1 = wp * v1 * sp1 + v2 * gp;
  out.p2 = wp * v2 * sp1 + v1 * gp;
  out.p11 = wp * sp2 * ((mp.p - 1.0) * v1 * v1 + v2 * v2) + v2 * v2 * gpp;
  out.p12 = wp * (mp.p - 2.0) * v1 * v2 * sp2 + gp + d * gpp;
  return out;
}

GDerivedRoots g_roots(const MaterialParams& mp, double r_c, double d0_plus) {
  mp.validate();
  if (!(r_c > 0.0)) throw std::domain_error("g_roots: r_c must be positive");
  if (!(d0_plus > 0.0)) throw std::domain_error("g_roots: d0_plus must be positive");

  constexpr double kTol = 1e-12;
  auto gp = [&](double d) { return g_prime(d, mp); };

  GDerivedRoots out;
  out.d0 = detail::solve_increasing(gp, 0.0, 1.0, kTol);
  double shift = mp.omega * mp.p * std::pow(r_c, mp.p - 2.0);
  out.d_minus = detail::solve_increasing(gp, -shift, 0.5 * out.d0, kTol);
  out.d_plus = detail::solve_increasing(gp, gp(d0_plus) + shift, out.d0, kTol);

  if (!(0.0 < out.d_minus && out.d_minus < out.d0 && out.d0 < out.d_plus))
    throw std::runtime_error("g_roots: root ordering 0 < d_minus < d0 < d_plus violated");
  return out;
}

}  // namespace cavmesh
