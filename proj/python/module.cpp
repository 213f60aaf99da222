#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavmesh/cavity_solver.hpp"
#include "cavmesh/json_io.hpp"
#include "cavmesh/mesh.hpp"
#include "cavmesh/mesh_check.hpp"
#include "cavmesh/op_conditions.hpp"
#include "cavmesh/oracle.hpp"

namespace py = pybind11;
using namespace cavmesh;

PYBIND11_MODULE(_cavmesh, m) {
  m.doc() = "planner and verifier for orientation-preserving quadratic curved meshes "
            "around cavities";

  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<LayerTooThick>(m, "LayerTooThickError");
  py::register_exception<PlanningError>(m, "PlanningError");

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init([](double p, double omega, double c1, double c2) {
             MaterialParams mp{p, omega, c1, c2};
             mp.validate();
             return mp;
           }),
           py::arg("p") = 1.5, py::arg("omega") = 2.0 / 3.0,
           py::arg("c1") = 0.8408964152537146, py::arg("c2") = 0.8408964152537146)
      .def_readonly("p", &MaterialParams::p)
      .def_readonly("omega", &MaterialParams::omega)
      .def_readonly("c1", &MaterialParams::c1)
      .def_readonly("c2", &MaterialParams::c2);

  m.def("phi", &phi, py::arg("v1"), py::arg("v2"), py::arg("params") = MaterialParams{},
        "energy density at the two singular values");
  m.def(
      "phi_partials",
      [](double v1, double v2, const MaterialParams& mp) {
        auto pp = phi_partials(v1, v2, mp);
        return py::make_tuple(pp.p1, pp.p2, pp.p11, pp.p12);
      },
      py::arg("v1"), py::arg("v2"), py::arg("params") = MaterialParams{});

  py::class_<GDerivedRoots>(m, "GDerivedRoots")
      .def_readonly("d0", &GDerivedRoots::d0)
      .def_readonly("d_minus", &GDerivedRoots::d_minus)
      .def_readonly("d_plus", &GDerivedRoots::d_plus);
  m.def("g_roots", &g_roots, py::arg("params"), py::arg("r_c"), py::arg("d0_plus"));
  m.def("g_roots_for", &g_roots_for, py::arg("solution"));

  py::class_<RadialSolution>(m, "RadialSolution")
      .def_property_readonly("rho", &RadialSolution::rho)
      .def_property_readonly("lam", &RadialSolution::lambda)
      .def_property_readonly("r_c", &RadialSolution::r_c)
      .def_property_readonly("m", &RadialSolution::m)
      .def_property_readonly("M", &RadialSolution::M)
      .def_property_readonly("Q", &RadialSolution::Q)
      .def_property_readonly("max_r_second", &RadialSolution::max_r_second)
      .def_property_readonly("grid", &RadialSolution::grid)
      .def("r", [](const RadialSolution& s, double t) { return s.sample(t).r; }, py::arg("t"))
      .def(
          "sample",
          [](const RadialSolution& s, double t) {
            auto v = s.sample(t);
            return py::make_tuple(v.r, v.r_prime, v.r_second);
          },
          py::arg("t"))
      .def("tau_cap", &RadialSolution::tau_cap, py::arg("eps"))
      .def("save", [](const RadialSolution& s, const std::string& p) { save_solution(s, p); },
           py::arg("path"))
      .def_static("load", [](const std::string& p) { return load_solution(p); },
                  py::arg("path"))
      .def_static(
          "from_table",
          [](std::vector<double> grid, std::vector<double> r, std::vector<double> rp,
             std::vector<double> rpp, double rho, double lam, const MaterialParams& mp) {
            return RadialSolution::from_table(std::move(grid), std::move(r), std::move(rp),
                                              std::move(rpp), rho, lam, mp);
          },
          py::arg("grid"), py::arg("r"), py::arg("r_prime"), py::arg("r_second"),
          py::arg("rho"), py::arg("lam"), py::arg("params") = MaterialParams{});

  m.def(
      "solve",
      [](double rho, double lam, const MaterialParams& mp, int grid) {
        return solve(CavityProblem{mp, rho, lam}, grid);
      },
      py::arg("rho") = 0.01, py::arg("lam") = 2.0, py::arg("params") = MaterialParams{},
      py::arg("grid") = 2000, "shooting solve of the radial cavity problem");

  py::class_<RadialSamples>(m, "RadialSamples")
      .def(py::init([](double s0, double s_half, double s1) {
             RadialSamples s{s0, s_half, s1};
             s.validate();
             return s;
           }),
           py::arg("s0"), py::arg("s_half"), py::arg("s1"))
      .def_readonly("s0", &RadialSamples::s0)
      .def_readonly("s_half", &RadialSamples::s_half)
      .def_readonly("s1", &RadialSamples::s1);

  m.def("check_type_a",
        [](const RadialSamples& s, int n) { return check_type_a(s, n).ok; }, py::arg("samples"),
        py::arg("n"));
  m.def("check_type_b",
        [](const RadialSamples& s, int n) { return check_type_b(s, n).ok; }, py::arg("samples"),
        py::arg("n"));
  m.def("verdict", &verdict, py::arg("samples"), py::arg("n"),
        "combined orientation-preservation verdict for both element types");
  m.def(
      "thresholds",
      [](const RadialSamples& s) {
        Thresholds th = thresholds(s);
        return py::make_tuple(th.feasible, th.l1, th.l2, th.l3);
      },
      py::arg("samples"));

  m.def("mesh_validity_n", &mesh_validity_n, py::arg("kappa"),
        "smallest angular couple count making the undeformed layer map valid");

  py::class_<LayerPlan>(m, "LayerPlan")
      .def_readonly("eps", &LayerPlan::eps)
      .def_readonly("tau", &LayerPlan::tau)
      .def_readonly("kappa", &LayerPlan::kappa)
      .def_readonly("n_hat", &LayerPlan::n_hat)
      .def_readonly("n_tilde", &LayerPlan::n_tilde)
      .def_readonly("n_affine", &LayerPlan::n_affine)
      .def_readonly("l1", &LayerPlan::l1)
      .def_readonly("l2", &LayerPlan::l2)
      .def_readonly("tau_cap", &LayerPlan::tau_cap);
  m.def("deformation_n", &deformation_n, py::arg("solution"), py::arg("eps"), py::arg("tau"));
  m.def("affine_n", &affine_n, py::arg("solution"), py::arg("eps"), py::arg("tau"));
  m.def("affine_n_identity", &affine_n_identity, py::arg("eps"), py::arg("tau"));

  py::class_<LayerSpec>(m, "LayerSpec")
      .def_readonly("eps", &LayerSpec::eps)
      .def_readonly("tau", &LayerSpec::tau)
      .def_readonly("n", &LayerSpec::n)
      .def_readonly("coarsened", &LayerSpec::coarsened);

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("rho", [](const Mesh& mesh) { return mesh.rho; })
      .def_property_readonly("mu", [](const Mesh& mesh) { return mesh.mu; })
      .def_property_readonly("node_count", [](const Mesh& mesh) { return mesh.nodes.size(); })
      .def_property_readonly("element_count",
                             [](const Mesh& mesh) { return mesh.elements.size(); })
      .def_property_readonly("layers", [](const Mesh& mesh) { return mesh.layers; })
      .def("save", [](const Mesh& mesh, const std::string& p) { save_mesh(mesh, p); },
           py::arg("path"))
      .def_static("load", [](const std::string& p) { return load_mesh(p); }, py::arg("path"));

  m.def("build_layer", &build_layer, py::arg("eps"), py::arg("tau"), py::arg("n"),
        py::arg("angular_offset") = 0.0);
  m.def("coarsen_split", &coarsen_split, py::arg("eps"), py::arg("tau"), py::arg("n"),
        py::arg("tau_out"), py::arg("angular_offset") = 0.0);
  m.def(
      "build_mesh",
      [](const RadialSolution& sol, double mu, double growth, bool allow_coarsen) {
        MeshStrategy st;
        st.growth = growth;
        st.allow_coarsen = allow_coarsen;
        return build_mesh(sol, mu, st);
      },
      py::arg("solution"), py::arg("mu"), py::arg("growth") = 2.0,
      py::arg("allow_coarsen") = true);
  m.def("validate_mesh", &validate_mesh, py::arg("mesh"));

  m.def(
      "check_mesh",
      [](const Mesh& mesh, const RadialSolution* sol, bool with_oracle) {
        CheckOptions opt;
        opt.solution = sol;
        opt.with_oracle = with_oracle;
        OPReport rep = check_mesh(mesh, opt);
        return py::make_tuple(rep.pass, rep.failing, to_json(rep).dump());
      },
      py::arg("mesh"), py::arg("solution") = nullptr, py::arg("with_oracle") = false,
      "returns (pass, failing element ids, report JSON string)");
}
