#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cavmesh/cavity_solver.hpp"

using namespace cavmesh;

namespace {

const CavityProblem kReference{};  // rho = 0.01, lambda = 2, default material

const RadialSolution& reference_solution() {
  static RadialSolution sol = solve(kReference, 2000);
  return sol;
}

}  // namespace

TEST_CASE("reference setup converges to the boundary stretch") {
  const auto& sol = reference_solution();
  CHECK(std::fabs(sol.r().back() - 2.0) < 1e-8);
  CHECK(sol.r_c() == sol.r().front());
  CHECK(sol.r_c() > 0.0);
  CHECK(sol.m() > 0.0);
  CHECK(sol.M() < std::numeric_limits<double>::infinity());
}

TEST_CASE("solution is strictly convex with bounded slope ratio") {
  const auto& sol = reference_solution();
  auto roots = g_roots_for(sol);
  for (std::size_t i = 0; i < sol.grid().size(); ++i) {
    double R = sol.grid()[i];
    CHECK(sol.r_second()[i] > 0.0);
    double ratio = sol.r_prime()[i] / R;
    CHECK(ratio >= roots.d_minus / sol.lambda() - 1e-12);
    double d = sol.r()[i] * sol.r_prime()[i] / R;
    CHECK(d >= roots.d_minus - 1e-9);
    CHECK(d <= roots.d_plus + 1e-9);
  }
}

TEST_CASE("natural boundary residual vanishes at the solution") {
  const auto& sol = reference_solution();
  double res = residual_natural_bc(sol.r().front(), sol.r_prime().front(), kReference);
  CHECK(std::fabs(res) < 1e-6);
}

TEST_CASE("natural boundary residual is strictly increasing in r'") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ur(0.5, 2.5);
  for (int trial = 0; trial < 50; ++trial) {
    double a = ur(rng);
    double prev = -std::numeric_limits<double>::infinity();
    for (double rp = 0.05; rp < 4.0; rp *= 1.7) {
      double v = residual_natural_bc(a, rp, kReference);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("negative residual forces g' below zero at the cavity surface") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ur(0.2, 3.0);
  std::uniform_real_distribution<double> ulog(-4.0, -1.5);
  const auto& mp = kReference.params;
  int negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    double a = ur(rng);
    double rp = std::pow(10.0, ulog(rng));  // small slopes keep d near the g' root
    double res = residual_natural_bc(a, rp, kReference);
    if (res < 0.0) {
      ++negatives;
      double d = a * rp / kReference.rho;
      CHECK(g_prime(d, mp) < 0.0);
    }
  }
  CHECK(negatives > 10);  // the implication must not hold vacuously
}

TEST_CASE("homogeneous deformation has zero radial curvature") {
  // dyadic inputs make lambda * R / R exact, so the factor vanishes exactly
  for (double lambda : {1.5, 2.0, 3.25})
    for (double R : {0.25, 0.5, 1.0})
      CHECK(rhs_second_order(R, lambda * R, lambda, kReference.params) == 0.0);
  // general inputs re-round r/R, leaving only round-off
  for (double lambda : {1.1, 3.7})
    for (double R : {0.05, 0.3})
      CHECK(std::fabs(rhs_second_order(R, lambda * R, lambda, kReference.params)) < 1e-13);
}

TEST_CASE("radial curvature has the sign of r/R - r'") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ur(0.1, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    double R = ur(rng) / 3.0 + 0.05;
    double r = ur(rng), rp = ur(rng);
    double rhs = rhs_second_order(R, r, rp, kReference.params);
    double drive = r / R - rp;
    if (drive > 1e-12) CHECK(rhs > 0.0);
    if (drive < -1e-12) CHECK(rhs < 0.0);
  }
}

TEST_CASE("curvature matches finite differencing of the equilibrium flux") {
  // d/dR (R * Phi_1) = Phi_2 along the solution, in divided-difference form
  const auto& sol = reference_solution();
  const auto& mp = sol.params();
  auto flux = [&](std::size_t i) {
    double R = sol.grid()[i];
    return R * phi_partials(sol.r_prime()[i], sol.r()[i] / R, mp).p1;
  };
  for (std::size_t i = 1; i + 1 < sol.grid().size(); i += 7) {
    double h1 = sol.grid()[i] - sol.grid()[i - 1];
    double h2 = sol.grid()[i + 1] - sol.grid()[i];
    // nonuniform central difference of the flux
    double dflux = (h1 * h1 * flux(i + 1) - h2 * h2 * flux(i - 1) +
                    (h2 * h2 - h1 * h1) * flux(i)) /
                   (h1 * h2 * (h1 + h2));
    double R = sol.grid()[i];
    double phi2 = phi_partials(sol.r_prime()[i], sol.r()[i] / R, mp).p2;
    CHECK(dflux == doctest::Approx(phi2).epsilon(1e-5));
  }
}

TEST_CASE("Cauchy stress is nonnegative, nondecreasing, and zero at the cavity") {
  const auto& sol = reference_solution();
  CHECK(std::fabs(cauchy_stress(sol, 0)) < 1e-6);
  double prev = -1e300;
  for (std::size_t i = 0; i < sol.grid().size(); i += 5) {
    double t = cauchy_stress(sol, i);
    CHECK(t >= prev - 1e-10);
    prev = t;
  }
}

TEST_CASE("grid refinement leaves the cavity radius unchanged to 1e-6") {
  const auto& coarse = reference_solution();
  RadialSolution fine = solve(kReference, 4000);
  CHECK(std::fabs(coarse.r_c() - fine.r_c()) < 1e-6);
}

TEST_CASE("sampling is exact at grid points") {
  const auto& sol = reference_solution();
  for (std::size_t i = 0; i < sol.grid().size(); i += 97) {
    auto s = sol.sample(sol.grid()[i]);
    CHECK(s.r == sol.r()[i]);
    CHECK(s.r_prime == sol.r_prime()[i]);
    CHECK(s.r_second == sol.r_second()[i]);
  }
}

TEST_CASE("interpolated r is strictly increasing between nodes") {
  const auto& sol = reference_solution();
  double prev = 0.0;
  for (int k = 0; k <= 4000; ++k) {
    double t = sol.rho() + (1.0 - sol.rho()) * k / 4000.0;
    double r = sol.sample(t).r;
    if (k > 0) CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("sampled values match an integration restart") {
  // re-integrate from the nearest grid node below with small uniform steps
  const auto& sol = reference_solution();
  const auto& mp = sol.params();
  for (double t : {0.015, 0.025, 0.11, 0.503, 0.97}) {
    auto it = std::upper_bound(sol.grid().begin(), sol.grid().end(), t);
    std::size_t i = std::size_t(it - sol.grid().begin()) - 1;
    double R = sol.grid()[i];
    double r = sol.r()[i], rp = sol.r_prime()[i];
    int steps = 2000;
    double h = (t - R) / steps;
    for (int k = 0; k < steps; ++k) {
      // classical fourth-order step on (r, r')
      auto f = [&](double x, double yr, double yp) {
        return rhs_second_order(x, yr, yp, mp);
      };
      double k1r = rp, k1p = f(R, r, rp);
      double k2r = rp + 0.5 * h * k1p, k2p = f(R + 0.5 * h, r + 0.5 * h * k1r, rp + 0.5 * h * k1p);
      double k3r = rp + 0.5 * h * k2p, k3p = f(R + 0.5 * h, r + 0.5 * h * k2r, rp + 0.5 * h * k2p);
      double k4r = rp + h * k3p, k4p = f(R + h, r + h * k3r, rp + h * k3p);
      r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
      rp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      R += h;
    }
    CHECK(sol.sample(t).r == doctest::Approx(r).epsilon(1e-6));
  }
}

TEST_CASE("sampling outside the solved annulus is rejected") {
  const auto& sol = reference_solution();
  CHECK_THROWS_AS(sol.sample(0.005), std::out_of_range);
  CHECK_THROWS_AS(sol.sample(1.1), std::out_of_range);
  CHECK_NOTHROW(sol.sample(1.0 + 1e-14));  // round-off drift from node construction
}

TEST_CASE("below-critical stretch reports no cavity branch") {
  // recorded behavior: lambda barely above 1 has no cavity branch for this
  // material, so the solver should refuse rather than fabricate a solution
  CavityProblem nearly_trivial = kReference;
  nearly_trivial.lambda = 1.0001;
  try {
    RadialSolution sol = solve(nearly_trivial, 400);
    WARN_MESSAGE(false, "cavity branch unexpectedly found at lambda = 1.0001, r_c = ",
                 sol.r_c());
  } catch (const SolverError&) {
    CHECK(true);
  }
}

TEST_CASE("synthetic tables reject inconsistent data") {
  CHECK_THROWS_AS(RadialSolution::from_table({0.1, 0.2}, {1.0, 0.9}, {1.0, 1.0}, {0.0, 0.0},
                                             0.1, 2.0, MaterialParams{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialSolution::from_table({0.1, 0.2}, {1.0, 1.1}, {1.0, -1.0}, {0.0, 0.0},
                                             0.1, 2.0, MaterialParams{}),
                  std::invalid_argument);
}
