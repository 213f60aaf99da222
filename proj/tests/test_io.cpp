#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cavmesh/json_io.hpp"

using namespace cavmesh;
namespace fs = std::filesystem;

namespace {

const RadialSolution& reference_solution() {
  static RadialSolution sol = solve(CavityProblem{}, 2000);
  return sol;
}

fs::path temp_file(const char* name) {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cavmesh_io_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir / name;
}

}  // namespace

TEST_CASE("solution round-trips through its JSON document") {
  const auto& sol = reference_solution();
  auto path = temp_file("sol.json");
  save_solution(sol, path.string());
  RadialSolution back = load_solution(path.string());

  REQUIRE(back.grid().size() == sol.grid().size());
  for (std::size_t i = 0; i < sol.grid().size(); ++i) {
    CHECK(back.grid()[i] == sol.grid()[i]);
    CHECK(back.r()[i] == sol.r()[i]);
    CHECK(back.r_prime()[i] == sol.r_prime()[i]);
    CHECK(back.r_second()[i] == sol.r_second()[i]);
  }
  CHECK(back.r_c() == sol.r_c());
  CHECK(back.m() == sol.m());
  CHECK(back.M() == sol.M());
  CHECK(back.Q() == sol.Q());
  CHECK(back.lambda() == sol.lambda());
  CHECK(back.params().c1 == sol.params().c1);
}

TEST_CASE("mesh export and import are the identity on coordinates") {
  Mesh mesh = coarsen_split(0.01, 0.01, 16, 0.02);
  auto path = temp_file("mesh.json");
  save_mesh(mesh, path.string());
  Mesh back = load_mesh(path.string());

  REQUIRE(back.nodes.size() == mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    CHECK(back.nodes[i].x == mesh.nodes[i].x);  // bit-exact round trip
    CHECK(back.nodes[i].y == mesh.nodes[i].y);
  }
  REQUIRE(back.elements.size() == mesh.elements.size());
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    CHECK(back.elements[i].kind == mesh.elements[i].kind);
    CHECK(back.elements[i].nodes == mesh.elements[i].nodes);
    CHECK(back.elements[i].layer == mesh.elements[i].layer);
  }
  REQUIRE(back.layers.size() == mesh.layers.size());
  CHECK(back.layers[1].coarsened);  // re-derived from the C elements
  CHECK(back.rho == mesh.rho);
  CHECK(back.mu == mesh.mu);
}

TEST_CASE("unknown element kinds are a parse error") {
  Mesh mesh = build_layer(0.01, 0.01, 4);
  nlohmann::json j = to_json(mesh);
  j["elements"][0]["kind"] = "E";
  auto path = temp_file("bad_kind.json");
  std::ofstream(path) << j.dump();
  CHECK_THROWS_WITH_AS(load_mesh(path.string()), doctest::Contains("unknown element kind"),
                       ParseError);
}

TEST_CASE("dangling node references are a validation error") {
  Mesh mesh = build_layer(0.01, 0.01, 4);
  nlohmann::json j = to_json(mesh);
  j["elements"][2]["nodes"][4] = 99999;
  auto path = temp_file("bad_ref.json");
  std::ofstream(path) << j.dump();
  CHECK_THROWS_WITH_AS(load_mesh(path.string()), doctest::Contains("missing node"),
                       ValidationError);
}

TEST_CASE("malformed documents report the file and position") {
  auto path = temp_file("garbage.json");
  std::ofstream(path) << "{ \"rho\": 0.01, ";
  CHECK_THROWS_AS(load_mesh(path.string()), ParseError);
  CHECK_THROWS_AS(load_solution(temp_file("absent.json").string()), ParseError);
}

TEST_CASE("missing fields are named") {
  auto path = temp_file("no_lambda.json");
  std::ofstream(path) << R"({"rho": 0.01, "grid": [0.1, 1.0], "r": [1.0, 2.0],
    "r_prime": [1.0, 1.0], "r_second": [0.0, 0.0],
    "params": {"p": 1.5, "omega": 0.66, "c1": 1.0, "c2": 1.0}})";
  CHECK_THROWS_WITH_AS(load_solution(path.string()), doctest::Contains("lambda"), ParseError);
}

TEST_CASE("condition reports and layer plans serialize their contract keys") {
  RadialSamples id{1.0, 1.5, 2.0};
  nlohmann::json cj = to_json(condition_report(id, 2));
  for (const char* key : {"s0", "s_half", "s1", "n", "cond_13", "cond_26", "cond_14", "cond_15",
                          "cond_25", "l1", "l2", "l3", "cos_bound", "verdict_A", "verdict_B",
                          "verdict"})
    CHECK(cj.contains(key));
  CHECK(cj["verdict"] == true);

  nlohmann::json pj = to_json(deformation_n(reference_solution(), 0.01, 0.01));
  for (const char* key : {"eps", "tau", "kappa", "N_hat", "N_tilde", "N_affine", "l1", "l2"})
    CHECK(pj.contains(key));
  CHECK(pj["N_tilde"].get<int>() >= pj["N_hat"].get<int>());
}

TEST_CASE("plot CSV dumps carry every node and sampled edges") {
  Mesh mesh = build_layer(0.01, 0.01, 4);
  auto prefix = temp_file("plot");
  write_plot_csv(mesh, prefix.string());
  std::ifstream nodes(prefix.string() + "_nodes.csv");
  REQUIRE(nodes.good());
  std::string line;
  int node_lines = 0;
  while (std::getline(nodes, line)) ++node_lines;
  CHECK(node_lines == int(mesh.nodes.size()) + 1);  // header + ids
  std::ifstream edges(prefix.string() + "_edges.csv");
  REQUIRE(edges.good());
  std::getline(edges, line);
  CHECK(line == "element,kind,edge,s,x,y");
}
