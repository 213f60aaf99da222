#pragma once

#include <string>
#include <vector>

#include "cavmesh/mesh.hpp"
#include "cavmesh/op_conditions.hpp"
#include "cavmesh/oracle.hpp"

namespace cavmesh {

struct CheckOptions {
  const RadialSolution* solution = nullptr;  // also check the interpolated deformation
  bool with_oracle = false;                  // record brute-force minima per element
  OracleConfig oracle;
};

struct ElementCheckResult {
  int element = -1;
  ElementKind kind = ElementKind::Straight;
  int layer = -1;
  bool mesh_ok = false;
  bool deform_checked = false;
  bool deform_ok = true;
  std::string method;          // "closed-form" or "certificate"
  double mesh_min_det = 0.0;   // sampled minima, only with with_oracle
  double deform_min_det = 0.0;
  bool sampled = false;
  bool has_witness = false;    // certificate counterexample, reference coords
  Vec2 witness{};
  double witness_value = 0.0;
};

struct LayerCheckResult {
  int layer = -1;
  double eps = 0.0, tau = 0.0;
  int n = 0;
  bool coarsened = false;
  ConditionReport mesh_report;    // identity profile: validity of the mesh map
  bool deform_checked = false;
  ConditionReport deform_report;  // sampled cavity deformation
};

/// Orientation-preservation report: per-layer condition values and per-element
/// verdicts. pass means conforming, every mesh map positive, and (when a
/// solution is supplied) every interpolated deformation positive.
struct OPReport {
  bool pass = false;
  bool deformation_checked = false;
  std::vector<LayerCheckResult> layers;
  std::vector<ElementCheckResult> elements;
  std::vector<int> failing;            // element ids
  std::vector<std::string> problems;   // conformity/consistency findings
};

/// Verifies the mesh: closed-form verdicts for A/B elements through their
/// layer samples, subdivision certificates for C/D/straight elements, brute
/// force sampling on top when requested. Element fan-out respects
/// CAVMESH_THREADS.
OPReport check_mesh(const Mesh& mesh, const CheckOptions& options = {});

/// Fills CurvedElement::layer by matching node radii against the declared
/// layers (used after import). Throws ValidationError when a curved element
/// matches no layer.
void assign_element_layers(Mesh& mesh);

}  // namespace cavmesh
