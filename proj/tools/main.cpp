#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavmesh/json_io.hpp"
#include "cavmesh/mesh.hpp"
#include "cavmesh/mesh_check.hpp"
#include "cavmesh/op_conditions.hpp"

using namespace cavmesh;

namespace {

// exit codes: 0 success, 1 usage or I/O, 2 solver/planner failure,
// 3 verification failure

struct RunConfig {
  double rho = 0.01;
  double lambda = 2.0;
  double p = 1.5;
  double omega = 2.0 / 3.0;
  double c1 = 0.8408964152537146;
  double c2 = 0.8408964152537146;
  int grid = 2000;

  MaterialParams material() const { return {p, omega, c1, c2}; }
  CavityProblem problem() const { return {material(), rho, lambda}; }
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("rho", cfg.rho);
  get("lambda", cfg.lambda);
  get("p", cfg.p);
  get("omega", cfg.omega);
  get("c1", cfg.c1);
  get("c2", cfg.c2);
  get("grid", cfg.grid);
}

int cmd_solve(const RunConfig& cfg, const std::string& out_path) {
  RadialSolution sol = solve(cfg.problem(), cfg.grid);
  save_solution(sol, out_path);
  std::printf("solved rho = %g, lambda = %g on %d points -> %s\n", cfg.rho, cfg.lambda,
              cfg.grid, out_path.c_str());
  std::printf("  r_c   = %.12g\n", sol.r_c());
  std::printf("  m     = %.12g\n", sol.m());
  std::printf("  M     = %.12g\n", sol.M());
  std::printf("  max r'' = %.12g\n", sol.max_r_second());
  std::printf("  Q     = %.12g\n", sol.Q());
  return 0;
}

int cmd_required_n(const std::string& solution_path, double eps, double tau, bool identity,
                   bool as_json) {
  if (identity) {
    MeshValidity mv = mesh_validity(eps / tau);
    int na = affine_n_identity(eps, tau);
    if (as_json) {
      nlohmann::json j = {{"eps", eps},        {"tau", tau},     {"kappa", eps / tau},
                          {"N_hat", mv.n_hat}, {"N_affine", na}, {"l1_hat", mv.l1_hat},
                          {"l2_hat", mv.l2_hat}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("identity profile, kappa = %g\n", eps / tau);
      std::printf("  N_hat    = %d  (l1_hat = %.12g, l2_hat = %.12g)\n", mv.n_hat, mv.l1_hat,
                  mv.l2_hat);
      std::printf("  N_affine = %d\n", na);
    }
    return 0;
  }
  RadialSolution sol = load_solution(solution_path);
  LayerPlan plan = deformation_n(sol, eps, tau);
  if (as_json) {
    std::cout << to_json(plan).dump(2) << "\n";
    return 0;
  }
  std::printf("layer [%g, %g], kappa = %g\n", eps, eps + tau, plan.kappa);
  std::printf("  N_hat    = %d\n", plan.n_hat);
  std::printf("  N_tilde  = %d  (l1 = %.12g, l2 = %.12g)\n", plan.n_tilde, plan.l1, plan.l2);
  std::printf("  N_affine = %d\n", plan.n_affine);
  std::printf("  midpoint condition 2r_half - r1 = %.6g\n", plan.cond_13);
  std::printf("  slope condition 4r_half - 3r0 - r1 = %.6g\n", plan.cond_26);
  std::printf("  tau cap  = %.6g (%s)\n", plan.tau_cap,
              plan.tau_within_cap ? "within" : "exceeded");
  return 0;
}

int cmd_table_kappa(double kmin, double kmax, int count, const std::string& out_path) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ParseError("cannot write " + out_path);
    os = &file;
  }
  *os << "kappa,l1_hat,l2_hat,N_hat\n";
  char line[160];
  for (int i = 0; i < count; ++i) {
    double kappa = count == 1 ? kmin : kmin * std::pow(kmax / kmin, double(i) / (count - 1));
    MeshValidity mv = mesh_validity(kappa);
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%d\n", kappa, mv.l1_hat, mv.l2_hat,
                  mv.n_hat);
    *os << line;
  }
  return 0;
}

int cmd_table_layers(const std::string& solution_path, std::vector<double> eps_list,
                     double tau_flag, const std::string& out_path) {
  RadialSolution sol = load_solution(solution_path);
  if (eps_list.empty()) eps_list = {0.01, 0.02, 0.05, 0.1, 0.2};
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ParseError("cannot write " + out_path);
    os = &file;
  }
  *os << "eps,tau,N_tilde,N_affine,ratio\n";
  char line[200];
  for (double eps : eps_list) {
    double tau = tau_flag > 0.0 ? tau_flag : std::min(eps, sol.tau_cap(eps));
    LayerPlan plan = deformation_n(sol, eps, tau);
    double ratio = std::log(double(plan.n_tilde)) / std::log(double(plan.n_affine));
    std::snprintf(line, sizeof line, "%.12g,%.12g,%d,%d,%.6f\n", eps, tau, plan.n_tilde,
                  plan.n_affine, ratio);
    *os << line;
  }
  return 0;
}

MeshStrategy parse_strategy(double growth, double first_tau, bool no_coarsen,
                            double outer_growth, const std::vector<std::string>& overrides,
                            const std::string& explicit_layers) {
  MeshStrategy st;
  st.growth = growth;
  st.first_tau = first_tau;
  st.allow_coarsen = !no_coarsen;
  st.outer_growth = outer_growth;
  for (const auto& ov : overrides) {
    auto colon = ov.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--force-layer-n", "expected <layer>:<count>, got " + ov);
    st.n_override[std::stoi(ov.substr(0, colon))] = std::stoi(ov.substr(colon + 1));
  }
  if (!explicit_layers.empty()) {
    std::size_t pos = 0;
    while (pos < explicit_layers.size()) {
      auto comma = explicit_layers.find(',', pos);
      std::string item = explicit_layers.substr(pos, comma - pos);
      auto colon = item.find(':');
      if (colon == std::string::npos)
        throw CLI::ValidationError("--layers", "expected eps:tau pairs, got " + item);
      st.explicit_layers.push_back(
          {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return st;
}

int cmd_plan(const std::string& solution_path, double mu, const MeshStrategy& st,
             const std::string& out_path) {
  RadialSolution sol = load_solution(solution_path);
  Mesh mesh = build_mesh(sol, mu, st);
  save_mesh(mesh, out_path);
  std::printf("mesh: %zu nodes, %zu elements, %zu curved layers -> %s\n", mesh.nodes.size(),
              mesh.elements.size(), mesh.layers.size(), out_path.c_str());
  for (std::size_t k = 0; k < mesh.layers.size(); ++k) {
    const auto& l = mesh.layers[k];
    std::printf("  layer %zu: [%.6g, %.6g] N = %d%s\n", k, l.eps, l.eps + l.tau, l.n,
                l.coarsened ? " (coarsened, B split into C/D)" : "");
  }
  for (const auto& w : mesh.warnings) std::printf("  warning: %s\n", w.c_str());
  return 0;
}

int cmd_check(const std::string& mesh_path, const std::string& solution_path, bool with_oracle,
              int oracle_grid, const std::string& report_path) {
  Mesh mesh = load_mesh(mesh_path);
  std::optional<RadialSolution> sol;
  CheckOptions opt;
  if (!solution_path.empty()) {
    sol = load_solution(solution_path);
    opt.solution = &*sol;
  }
  opt.with_oracle = with_oracle;
  if (oracle_grid > 0) opt.oracle.grid = oracle_grid;

  OPReport report = check_mesh(mesh, opt);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ParseError("cannot write " + report_path);
    out << to_json(report).dump(2) << "\n";
  }

  for (const auto& lr : report.layers) {
    std::printf("layer %d [%.6g, %.6g] N = %d: map %s", lr.layer, lr.eps, lr.eps + lr.tau, lr.n,
                lr.mesh_report.verdict ? "ok" : "INVALID");
    if (lr.deform_checked)
      std::printf(", deformation %s", lr.deform_report.verdict ? "ok" : "INVALID");
    std::printf("\n");
  }
  if (report.pass) {
    std::printf("all %zu elements pass\n", report.elements.size());
    return 0;
  }
  for (int id : report.failing) {
    const auto& e = report.elements[std::size_t(id)];
    std::printf("FAIL element %d (kind %s, layer %d): %s%s\n", id, to_string(e.kind).c_str(),
                e.layer, e.mesh_ok ? "" : "mesh map not orientation preserving ",
                (e.deform_checked && !e.deform_ok) ? "interpolated deformation inverts" : "");
  }
  for (const auto& p : report.problems) std::printf("PROBLEM: %s\n", p.c_str());
  std::printf("verification failed: %zu failing elements, %zu problems\n",
              report.failing.size(), report.problems.size());
  return 3;
}

int cmd_export(const std::string& mesh_path, const std::string& csv_prefix) {
  Mesh mesh = load_mesh(mesh_path);
  write_plot_csv(mesh, csv_prefix);
  std::printf("wrote %s_nodes.csv and %s_edges.csv\n", csv_prefix.c_str(), csv_prefix.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavmesh: plans and verifies orientation-preserving quadratic curved meshes "
               "for radially symmetric cavity deformations"};
  app.require_subcommand(1);
  std::function<int()> action;

  RunConfig cfg;
  std::string config_path;

  auto* solve_cmd = app.add_subcommand("solve", "solve the radial cavity boundary-value problem");
  {
    static std::string out = "solution.json";
    solve_cmd->add_option("--config", config_path, "JSON config file (flags win)");
    solve_cmd->add_option("--rho", cfg.rho, "inner defect radius");
    solve_cmd->add_option("--lambda", cfg.lambda, "outer boundary stretch");
    solve_cmd->add_option("--p", cfg.p, "energy exponent (1 < p < 2)");
    solve_cmd->add_option("--omega", cfg.omega, "isochoric modulus");
    solve_cmd->add_option("--c1", cfg.c1, "volumetric quadratic coefficient");
    solve_cmd->add_option("--c2", cfg.c2, "volumetric reciprocal coefficient");
    solve_cmd->add_option("--grid", cfg.grid, "radial grid size");
    solve_cmd->add_option("--out", out, "output solution JSON");
    solve_cmd->callback([&] { action = [&] { return cmd_solve(cfg, out); }; });
  }

  auto* reqn_cmd = app.add_subcommand("required-n", "minimal angular couple counts for a layer");
  {
    static std::string sol_path = "solution.json";
    static double eps = 0.01, tau = 0.01;
    static bool identity = false, as_json = false;
    reqn_cmd->add_option("--solution", sol_path, "solution JSON from `solve`");
    reqn_cmd->add_option("--eps", eps, "layer inner radius")->required();
    reqn_cmd->add_option("--tau", tau, "layer thickness")->required();
    reqn_cmd->add_flag("--identity", identity, "use the identity profile (no solution needed)");
    reqn_cmd->add_flag("--json", as_json, "print the layer plan as JSON");
    reqn_cmd->callback(
        [&] { action = [&] { return cmd_required_n(sol_path, eps, tau, identity, as_json); }; });
  }

  auto* table_cmd = app.add_subcommand("table", "CSV sweeps of the minimal counts");
  {
    static std::string mode = "kappa", out, sol_path = "solution.json";
    static double kmin = 1.0, kmax = 1e8, tau = -1.0;
    static int count = 9;
    static std::vector<double> eps_list;
    table_cmd->add_option("--mode", mode, "kappa | layers")
        ->check(CLI::IsMember({"kappa", "layers"}));
    table_cmd->add_option("--min", kmin, "smallest aspect ratio");
    table_cmd->add_option("--max", kmax, "largest aspect ratio");
    table_cmd->add_option("--count", count, "number of rows (log spaced)");
    table_cmd->add_option("--solution", sol_path, "solution JSON (layers mode)");
    table_cmd->add_option("--eps", eps_list, "layer inner radii (layers mode)");
    table_cmd->add_option("--tau", tau, "fixed layer thickness (default min(eps, cap))");
    table_cmd->add_option("--out", out, "output CSV (default stdout)");
    table_cmd->callback([&] {
      action = [&] {
        if (mode == "kappa") return cmd_table_kappa(kmin, kmax, count, out);
        return cmd_table_layers(sol_path, eps_list, tau, out);
      };
    });
  }

  auto* plan_cmd = app.add_subcommand("plan", "build the layered curved mesh");
  {
    static std::string sol_path = "solution.json", out = "mesh.json", explicit_layers;
    static double mu = 0.15, growth = 2.0, first_tau = -1.0, outer_growth = -1.0;
    static bool no_coarsen = false;
    static std::vector<std::string> overrides;
    plan_cmd->add_option("--solution", sol_path, "solution JSON from `solve`");
    plan_cmd->add_option("--mu", mu, "radius where curved layers end");
    plan_cmd->add_option("--growth", growth, "radial thickness growth between layers");
    plan_cmd->add_option("--first-tau", first_tau, "thickness of the innermost layer");
    plan_cmd->add_flag("--no-coarsen", no_coarsen, "never halve the angular count");
    plan_cmd->add_option("--outer-growth", outer_growth, "ring growth in the straight region");
    plan_cmd->add_option("--force-layer-n", overrides,
                         "override a layer's couple count, <layer>:<count>");
    plan_cmd->add_option("--layers", explicit_layers, "explicit schedule eps:tau,eps:tau,...");
    plan_cmd->add_option("--out", out, "output mesh JSON");
    plan_cmd->callback([&] {
      action = [&] {
        return cmd_plan(sol_path, mu,
                        parse_strategy(growth, first_tau, no_coarsen, outer_growth, overrides,
                                       explicit_layers),
                        out);
      };
    });
  }

  auto* check_cmd = app.add_subcommand("check", "verify orientation preservation of a mesh");
  {
    static std::string mesh_path = "mesh.json", sol_path, report_path;
    static bool with_oracle = false;
    static int oracle_grid = 0;
    check_cmd->add_option("--mesh", mesh_path, "mesh JSON from `plan`");
    check_cmd->add_option("--solution", sol_path, "also check the interpolated deformation");
    check_cmd->add_flag("--oracle", with_oracle, "record brute-force minima per element");
    check_cmd->add_option("--oracle-grid", oracle_grid, "sampling grid for --oracle");
    check_cmd->add_option("--report", report_path, "write the full report as JSON");
    check_cmd->callback([&] {
      action = [&] {
        return cmd_check(mesh_path, sol_path, with_oracle, oracle_grid, report_path);
      };
    });
  }

  auto* export_cmd = app.add_subcommand("export", "dump plotting CSVs for a mesh");
  {
    static std::string mesh_path = "mesh.json", csv_prefix = "mesh";
    export_cmd->add_option("--mesh", mesh_path, "mesh JSON");
    export_cmd->add_option("--plot-csv", csv_prefix, "prefix for _nodes.csv and _edges.csv");
    export_cmd->callback([&] { action = [&] { return cmd_export(mesh_path, csv_prefix); }; });
  }

  // apply the config file before parsing so explicit flags win
  try {
    for (int i = 1; i < argc; ++i) {
      std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        apply_config_file(cfg, argv[i + 1]);
      else if (arg.rfind("--config=", 0) == 0)
        apply_config_file(cfg, arg.substr(9));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const SolverError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const LayerTooThick& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const PlanningError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
