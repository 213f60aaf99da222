#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cavmesh/cavity_solver.hpp"
#include "cavmesh/mesh.hpp"
#include "cavmesh/mesh_check.hpp"
#include "cavmesh/op_conditions.hpp"

namespace cavmesh {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const MaterialParams& mp);
MaterialParams material_from_json(const nlohmann::json& j);

/// Solution document:
/// {"rho","lambda","params","grid","r","r_prime","r_second","m","M","Q","r_c"}.
nlohmann::json to_json(const RadialSolution& sol);
RadialSolution solution_from_json(const nlohmann::json& j);
void save_solution(const RadialSolution& sol, const std::string& path);
RadialSolution load_solution(const std::string& path);

/// Mesh document:
/// {"rho","mu","nodes":[{"id","x","y"}],"elements":[{"kind","nodes"}],
///  "layers":[{"eps","tau","N"}]}. Coordinates round-trip exactly.
nlohmann::json to_json(const Mesh& mesh);
Mesh mesh_from_json(const nlohmann::json& j);
void save_mesh(const Mesh& mesh, const std::string& path);
Mesh load_mesh(const std::string& path);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const LayerPlan& p);
nlohmann::json to_json(const OPReport& r);

/// Node and sampled-edge CSV dumps for external plotting
/// (<prefix>_nodes.csv and <prefix>_edges.csv).
void write_plot_csv(const Mesh& mesh, const std::string& prefix);

}  // namespace cavmesh
