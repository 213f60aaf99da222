#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cavmesh/cavity_solver.hpp"
#include "cavmesh/geometry.hpp"
#include "cavmesh/isoparam.hpp"

namespace cavmesh {

struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A: single vertex on the inner circle of its layer; B: single vertex on the
/// outer circle; C/D: the two halves of a B element split along the radial
/// midline when the next layer outward halves the angular count; Straight:
/// outer-region element (midpoints Euclidean except on the domain circles).
enum class ElementKind { A, B, C, D, Straight };

std::string to_string(ElementKind k);
ElementKind element_kind_from_string(const std::string& s);

struct CurvedElement {
  ElementKind kind = ElementKind::Straight;
  int layer = -1;  // index into Mesh::layers, -1 for the outer region
  std::array<int, 6> nodes{};  // (v1, v2, v3, e12, e13, e23)
};

struct LayerSpec {
  double eps = 0.0;
  double tau = 0.0;
  int n = 0;               // couples
  bool coarsened = false;  // true when this layer's B elements are split into C/D
};

struct Mesh {
  double rho = 0.0;
  double mu = 0.0;  // radius where curved layers give way to the straight region
  std::vector<Vec2> nodes;
  std::vector<CurvedElement> elements;
  std::vector<LayerSpec> layers;
  std::vector<std::string> warnings;  // not serialized

  ControlNet control_net(int element) const;
  ControlNet deformed_net(int element, const RadialSolution& sol) const;
};

/// One circumferentially uniform layer of 2n alternating A/B elements.
/// Vertex nodes sit on the two circles, curved-edge nodes follow the polar
/// midpoint rule. Attaches a warning (does not fail) when n is below the
/// mesh-validity count for this aspect ratio.
Mesh build_layer(double eps, double tau, int n, double angular_offset = 0.0);

/// The layer above plus a coarsened layer outside it: n/2 couples on
/// [eps+tau, eps+tau+tau_out] whose B elements are split into C and D along
/// the radial midline, conforming with the inner layer's node pattern.
/// Requires n even.
Mesh coarsen_split(double eps, double tau, int n, double tau_out, double angular_offset = 0.0);

struct MeshStrategy {
  double growth = 2.0;       // radial thickness ratio between curved layers
  double first_tau = -1.0;   // <= 0: min(rho, mu - rho), aspect ratio 1 at the cavity
  bool allow_coarsen = true;
  double outer_growth = -1.0;  // <= 0: 2.0; thick rings keep the straight-element
                               // deformation requirement low
  int max_layers = 64;

  /// Optional explicit curved-layer schedule (eps, tau), contiguous from rho
  /// to mu. Layer-too-thick failures then propagate instead of shrinking tau.
  std::vector<std::pair<double, double>> explicit_layers;

  /// Per-layer angular count overrides (index -> couples). The override must
  /// keep conformity (equal or half the previous layer's count) and mesh
  /// validity; the deformation requirement is deliberately not enforced so
  /// under-resolved meshes can be built for negative testing.
  std::map<int, int> n_override;
};

/// Layered curved triangulation of [rho, mu] driven by the per-layer
/// orientation-preservation counts of the solved deformation, coupled with
/// straight structured rings on [mu, 1]. Every element's map determinant is
/// validated (closed forms for A/B, subdivision certificates otherwise).
Mesh build_mesh(const RadialSolution& sol, double mu, const MeshStrategy& strategy = {});

/// Conformity check: every interior edge is shared by exactly two elements
/// with the same midpoint node; node references are in range. Throws
/// ValidationError with the offending element named.
void validate_mesh(const Mesh& mesh);

}  // namespace cavmesh
