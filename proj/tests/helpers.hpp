#pragma once

#include <algorithm>
#include <random>

#include "cavmesh/isoparam.hpp"

namespace testutil {

inline std::mt19937& rng() {
  static std::mt19937 gen(2024);
  return gen;
}

inline cavmesh::Vec2 random_triangle_point(std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(gen), b = u(gen);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {a, b};
}

inline cavmesh::ControlNet random_net(double scale = 1.0, std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> u(-scale, scale);
  cavmesh::ControlNet net;
  for (auto& p : net.pts) p = {u(gen), u(gen)};
  return net;
}

/// Admissible layer samples: 0 < s0 < s_half < s1, midpoint at or below the
/// chord (realizable by an increasing convex profile) and above half the
/// outer sample so the midpoint hypothesis holds.
inline cavmesh::RadialSamples random_samples(std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s0 = 0.05 + 5.0 * u(gen);
  double s1 = s0 * (1.02 + 3.0 * u(gen));
  double lo = std::max(s0, 0.5 * s1) * (1.0 + 1e-6);
  double hi = 0.5 * (s0 + s1);
  double sh = lo + (hi - lo) * u(gen);
  return {s0, sh, s1};
}

inline cavmesh::ControlNet straight_net(cavmesh::Vec2 a, cavmesh::Vec2 b, cavmesh::Vec2 c) {
  cavmesh::ControlNet net;
  net.pts = {a, b, c, 0.5 * (a + b), 0.5 * (a + c), 0.5 * (b + c)};
  return net;
}

/// A plausibly-shaped quadratic element: positively oriented triangle with
/// edge nodes perturbed off their midpoints. Small perturbations stay valid,
/// large ones frequently invert, so both verdicts occur in bulk draws.
inline cavmesh::ControlNet random_element_net(std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cavmesh::Vec2 a, b, c;
  do {
    a = {u(gen), u(gen)};
    b = {u(gen), u(gen)};
    c = {u(gen), u(gen)};
  } while (cavmesh::cross(b - a, c - a) < 0.3);
  cavmesh::ControlNet net = straight_net(a, b, c);
  std::uniform_real_distribution<double> mag(0.0, 0.45);
  double wobble = mag(gen);
  for (int k = 3; k < 6; ++k) net.pts[k] = net.pts[k] + wobble * cavmesh::Vec2{u(gen), u(gen)};
  return net;
}

}  // namespace testutil
