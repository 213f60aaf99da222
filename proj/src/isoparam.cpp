#include "cavmesh/isoparam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cavmesh {

namespace ref {

std::array<double, 6> basis(double x1, double x2) {
  double l1 = 1.0 - x1 - x2;
  double l2 = x1;
  double l3 = x2;
  return {l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0), l3 * (2.0 * l3 - 1.0),
          4.0 * l1 * l2,         4.0 * l1 * l3,         4.0 * l2 * l3};
}

std::array<Vec2, 6> basis_grad(double x1, double x2) {
  double l1 = 1.0 - x1 - x2;
  double l2 = x1;
  double l3 = x2;
  // grad l1 = (-1,-1), grad l2 = (1,0), grad l3 = (0,1)
  double d1 = 4.0 * l1 - 1.0;
  double d2 = 4.0 * l2 - 1.0;
  double d3 = 4.0 * l3 - 1.0;
  return {Vec2{-d1, -d1},
          Vec2{d2, 0.0},
          Vec2{0.0, d3},
          Vec2{4.0 * (l1 - l2), -4.0 * l2},
          Vec2{-4.0 * l3, 4.0 * (l1 - l3)},
          Vec2{4.0 * l3, 4.0 * l2}};
}

std::array<Vec2, 6> nodes() {
  return {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0},
          Vec2{0.5, 0.0}, Vec2{0.0, 0.5}, Vec2{0.5, 0.5}};
}

}  // namespace ref

Vec2 map_point(const ControlNet& net, Vec2 xhat) {
  auto b = ref::basis(xhat.x, xhat.y);
  Vec2 out{0.0, 0.0};
  for (int k = 0; k < 6; ++k) out = out + b[k] * net.pts[k];
  return out;
}

Mat2 jacobian(const ControlNet& net, Vec2 xhat) {
  auto g = ref::basis_grad(xhat.x, xhat.y);
  Mat2 j;
  for (int k = 0; k < 6; ++k) {
    j.a11 += net.pts[k].x * g[k].x;
    j.a12 += net.pts[k].x * g[k].y;
    j.a21 += net.pts[k].y * g[k].x;
    j.a22 += net.pts[k].y * g[k].y;
  }
  return j;
}

void RadialSamples::validate() const {
  if (!(s0 > 0.0 && s_half > 0.0 && s1 > 0.0))
    throw std::invalid_argument("radial samples must be positive, got (" + std::to_string(s0) +
                                ", " + std::to_string(s_half) + ", " + std::to_string(s1) + ")");
}

namespace {

struct Trig {
  double c2n, s2n;  // cos/sin of pi / (2n)
  double cn, sn;    // cos/sin of pi / n
};

Trig trig_for(int n, int min_n = 2) {
  if (n < min_n)
    throw std::invalid_argument("layer element requires n >= " + std::to_string(min_n) +
                                " couples");
  double half = std::numbers::pi / (2.0 * n);
  return {std::cos(half), std::sin(half), std::cos(2.0 * half), std::sin(2.0 * half)};
}

}  // namespace

JacobianFormA interp_radial_a(const RadialSamples& s, int n) {
  s.validate();
  Trig t = trig_for(n);
  JacobianFormA f;
  f.alpha1 = s.s0 + s.s1 - 2.0 * s.s_half * t.c2n;
  f.alpha2 = -3.0 * s.s0 - s.s1 * t.cn + 4.0 * s.s_half * t.c2n;
  f.alpha3 = s.s1 * t.c2n * t.c2n - 2.0 * s.s_half * t.c2n + s.s0;
  f.beta = s.s1 * t.sn - 4.0 * s.s_half * t.s2n;
  f.gamma = s.s1 * t.sn - 2.0 * s.s_half * t.s2n;
  f.s0 = s.s0;
  f.s_half = s.s_half;
  f.s1 = s.s1;
  f.n = n;
  return f;
}

JacobianFormB interp_radial_b(const RadialSamples& s, int n) {
  s.validate();
  Trig t = trig_for(n);
  JacobianFormB f;
  f.alpha1 = s.s0 + s.s1 - 2.0 * s.s_half * t.c2n;
  f.alpha2 = -3.0 * s.s1 - s.s0 * t.cn + 4.0 * s.s_half * t.c2n;
  f.alpha3 = s.s0 * t.c2n * t.c2n - 2.0 * s.s_half * t.c2n + s.s1;
  f.beta = s.s0 * t.sn - 4.0 * s.s_half * t.s2n;
  f.gamma = s.s0 * t.sn - 2.0 * s.s_half * t.s2n;
  f.s0 = s.s0;
  f.s_half = s.s_half;
  f.s1 = s.s1;
  f.n = n;
  return f;
}

double det_h_a(const JacobianFormA& f, double y, double z) {
  double s2n = std::sin(std::numbers::pi / (2.0 * f.n));
  double sin2 = s2n * s2n;
  return 16.0 * f.gamma * f.alpha1 * y * y - 64.0 * f.s1 * f.gamma * sin2 * z +
         (-8.0 * f.beta * (f.alpha1 - f.s1 * sin2) + 4.0 * f.gamma * f.alpha2) * y -
         2.0 * f.beta * f.alpha2;
}

double det_h_b(const JacobianFormB& f, double y, double z) {
  double s2n = std::sin(std::numbers::pi / (2.0 * f.n));
  double sin2 = s2n * s2n;
  return -16.0 * f.gamma * f.alpha1 * y * y + 64.0 * f.s0 * f.gamma * sin2 * z +
         (8.0 * f.beta * f.alpha3 - 4.0 * f.gamma * f.alpha2) * y + 2.0 * f.beta * f.alpha2;
}

ControlNet representative_net_a(const RadialSamples& s, int n) {
  s.validate();
  Trig t = trig_for(n, 1);
  ControlNet net;
  net.pts[0] = {s.s0, 0.0};
  net.pts[1] = {s.s1 * t.cn, -s.s1 * t.sn};
  net.pts[2] = {s.s1 * t.cn, s.s1 * t.sn};
  net.pts[3] = {s.s_half * t.c2n, -s.s_half * t.s2n};
  net.pts[4] = {s.s_half * t.c2n, s.s_half * t.s2n};
  net.pts[5] = {s.s1, 0.0};
  return net;
}

ControlNet representative_net_b(const RadialSamples& s, int n) {
  s.validate();
  Trig t = trig_for(n, 1);
  ControlNet net;
  net.pts[0] = {s.s1, 0.0};
  net.pts[1] = {s.s0 * t.cn, s.s0 * t.sn};
  net.pts[2] = {s.s0 * t.cn, -s.s0 * t.sn};
  net.pts[3] = {s.s_half * t.c2n, s.s_half * t.s2n};
  net.pts[4] = {s.s_half * t.c2n, -s.s_half * t.s2n};
  net.pts[5] = {s.s0, 0.0};
  return net;
}

}  // namespace cavmesh
