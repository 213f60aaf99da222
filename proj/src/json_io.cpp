#include "cavmesh/json_io.hpp"

#include <fstream>
#include <set>

namespace cavmesh {

using nlohmann::json;

namespace {

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
}

void save_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

const json& field(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(ctx + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

json to_json(const MaterialParams& mp) {
  return {{"p", mp.p}, {"omega", mp.omega}, {"c1", mp.c1}, {"c2", mp.c2}};
}

MaterialParams material_from_json(const json& j) {
  MaterialParams mp;
  mp.p = field(j, "p", "params").get<double>();
  mp.omega = field(j, "omega", "params").get<double>();
  mp.c1 = field(j, "c1", "params").get<double>();
  mp.c2 = field(j, "c2", "params").get<double>();
  mp.validate();
  return mp;
}

json to_json(const RadialSolution& sol) {
  return {{"rho", sol.rho()},          {"lambda", sol.lambda()},
          {"params", to_json(sol.params())},
          {"grid", sol.grid()},        {"r", sol.r()},
          {"r_prime", sol.r_prime()},  {"r_second", sol.r_second()},
          {"m", sol.m()},              {"M", sol.M()},
          {"Q", sol.Q()},              {"r_c", sol.r_c()}};
}

RadialSolution solution_from_json(const json& j) {
  const std::string ctx = "solution";
  try {
    return RadialSolution::from_table(
        field(j, "grid", ctx).get<std::vector<double>>(),
        field(j, "r", ctx).get<std::vector<double>>(),
        field(j, "r_prime", ctx).get<std::vector<double>>(),
        field(j, "r_second", ctx).get<std::vector<double>>(),
        field(j, "rho", ctx).get<double>(), field(j, "lambda", ctx).get<double>(),
        material_from_json(field(j, "params", ctx)));
  } catch (const std::invalid_argument& err) {
    throw ParseError("solution: " + std::string(err.what()));
  }
}

void save_solution(const RadialSolution& sol, const std::string& path) {
  save_file(to_json(sol), path);
}

RadialSolution load_solution(const std::string& path) {
  return solution_from_json(load_file(path));
}

json to_json(const Mesh& mesh) {
  json nodes = json::array();
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
    nodes.push_back({{"id", i}, {"x", mesh.nodes[i].x}, {"y", mesh.nodes[i].y}});
  json elements = json::array();
  for (const auto& e : mesh.elements)
    elements.push_back({{"kind", to_string(e.kind)}, {"nodes", e.nodes}});
  json layers = json::array();
  for (const auto& l : mesh.layers)
    layers.push_back({{"eps", l.eps}, {"tau", l.tau}, {"N", l.n}});
  return {{"rho", mesh.rho},
          {"mu", mesh.mu},
          {"nodes", nodes},
          {"elements", elements},
          {"layers", layers}};
}

Mesh mesh_from_json(const json& j) {
  const std::string ctx = "mesh";
  Mesh mesh;
  mesh.rho = field(j, "rho", ctx).get<double>();
  mesh.mu = field(j, "mu", ctx).get<double>();

  const json& nodes = field(j, "nodes", ctx);
  mesh.nodes.resize(nodes.size());
  std::set<std::size_t> seen;
  for (const auto& nj : nodes) {
    auto id = field(nj, "id", "node").get<std::size_t>();
    if (id >= mesh.nodes.size() || !seen.insert(id).second)
      throw ParseError("mesh: node ids must be unique and dense, offending id " +
                       std::to_string(id));
    mesh.nodes[id] = {field(nj, "x", "node").get<double>(),
                      field(nj, "y", "node").get<double>()};
  }

  for (const auto& lj : field(j, "layers", ctx)) {
    LayerSpec l;
    l.eps = field(lj, "eps", "layer").get<double>();
    l.tau = field(lj, "tau", "layer").get<double>();
    l.n = field(lj, "N", "layer").get<int>();
    mesh.layers.push_back(l);
  }

  int idx = 0;
  for (const auto& ej : field(j, "elements", ctx)) {
    CurvedElement e;
    try {
      e.kind = element_kind_from_string(field(ej, "kind", "element").get<std::string>());
    } catch (const ValidationError& err) {
      throw ParseError("element " + std::to_string(idx) + ": " + err.what());
    }
    auto ids = field(ej, "nodes", "element").get<std::vector<int>>();
    if (ids.size() != 6)
      throw ParseError("element " + std::to_string(idx) + ": expected 6 node ids, got " +
                       std::to_string(ids.size()));
    for (int k = 0; k < 6; ++k) {
      if (ids[std::size_t(k)] < 0 || std::size_t(ids[std::size_t(k)]) >= mesh.nodes.size())
        throw ValidationError("element " + std::to_string(idx) + " references missing node " +
                              std::to_string(ids[std::size_t(k)]));
      e.nodes[std::size_t(k)] = ids[std::size_t(k)];
    }
    mesh.elements.push_back(e);
    ++idx;
  }

  // infer coarsening flags and element-layer assignment from the geometry
  assign_element_layers(mesh);
  for (const auto& e : mesh.elements)
    if (e.kind == ElementKind::C && e.layer >= 0)
      mesh.layers[std::size_t(e.layer)].coarsened = true;
  return mesh;
}

void save_mesh(const Mesh& mesh, const std::string& path) { save_file(to_json(mesh), path); }

Mesh load_mesh(const std::string& path) { return mesh_from_json(load_file(path)); }

json to_json(const ConditionReport& r) {
  return {{"s0", r.s0},
          {"s_half", r.s_half},
          {"s1", r.s1},
          {"n", r.n},
          {"cond_13", r.cond_13},
          {"cond_26", r.cond_26},
          {"cond_14", r.cond_14},
          {"cond_15", r.cond_15},
          {"cond_25", r.cond_25},
          {"has_thresholds", r.has_thresholds},
          {"l1", r.l1},
          {"l2", r.l2},
          {"l3", r.l3},
          {"cos_bound", r.cos_bound},
          {"verdict_A", r.verdict_a},
          {"verdict_B", r.verdict_b},
          {"verdict", r.verdict}};
}

json to_json(const LayerPlan& p) {
  return {{"eps", p.eps},
          {"tau", p.tau},
          {"kappa", p.kappa},
          {"N_hat", p.n_hat},
          {"N_tilde", p.n_tilde},
          {"N_affine", p.n_affine},
          {"l1", p.l1},
          {"l2", p.l2},
          {"cond_13", p.cond_13},
          {"cond_26", p.cond_26},
          {"tau_cap", p.tau_cap},
          {"tau_within_cap", p.tau_within_cap}};
}

json to_json(const OPReport& r) {
  json layers = json::array();
  for (const auto& l : r.layers) {
    json lj = {{"layer", l.layer},       {"eps", l.eps},
               {"tau", l.tau},           {"N", l.n},
               {"coarsened", l.coarsened}, {"mesh", to_json(l.mesh_report)}};
    if (l.deform_checked) lj["deformation"] = to_json(l.deform_report);
    layers.push_back(lj);
  }
  json elements = json::array();
  for (const auto& e : r.elements) {
    json ej = {{"element", e.element}, {"kind", to_string(e.kind)}, {"layer", e.layer},
               {"mesh_ok", e.mesh_ok}, {"method", e.method}};
    if (e.deform_checked) ej["deform_ok"] = e.deform_ok;
    if (e.sampled) {
      ej["mesh_min_det"] = e.mesh_min_det;
      if (e.deform_checked) ej["deform_min_det"] = e.deform_min_det;
    }
    if (e.has_witness)
      ej["counterexample"] = {{"x1", e.witness.x}, {"x2", e.witness.y}, {"det", e.witness_value}};
    elements.push_back(ej);
  }
  return {{"pass", r.pass},
          {"deformation_checked", r.deformation_checked},
          {"layers", layers},
          {"elements", elements},
          {"failing", r.failing},
          {"problems", r.problems}};
}

void write_plot_csv(const Mesh& mesh, const std::string& prefix) {
  {
    std::ofstream out(prefix + "_nodes.csv");
    if (!out) throw ParseError("cannot write " + prefix + "_nodes.csv");
    out << "id,x,y\n";
    out.precision(17);
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
      out << i << "," << mesh.nodes[i].x << "," << mesh.nodes[i].y << "\n";
  }
  std::ofstream out(prefix + "_edges.csv");
  if (!out) throw ParseError("cannot write " + prefix + "_edges.csv");
  out << "element,kind,edge,s,x,y\n";
  out.precision(17);
  const int kSamples = 8;
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    ControlNet net = mesh.control_net(int(i));
    std::string kind = to_string(mesh.elements[i].kind);
    for (int edge = 0; edge < 3; ++edge) {
      for (int k = 0; k <= kSamples; ++k) {
        double t = double(k) / kSamples;
        Vec2 xhat;
        if (edge == 0) xhat = {t, 0.0};
        else if (edge == 1) xhat = {0.0, t};
        else xhat = {1.0 - t, t};
        Vec2 p = map_point(net, xhat);
        out << i << "," << kind << "," << edge << "," << t << "," << p.x << "," << p.y << "\n";
      }
    }
  }
}

}  // namespace cavmesh
