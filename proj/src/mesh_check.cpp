#include "cavmesh/mesh_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavmesh/parallel.hpp"

namespace cavmesh {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool is_curved_kind(ElementKind k) { return k != ElementKind::Straight; }

double min_node_radius(const Mesh& mesh, const CurvedElement& e) {
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) lo = std::min(lo, norm(mesh.nodes[std::size_t(e.nodes[k])]));
  return lo;
}

double max_node_radius(const Mesh& mesh, const CurvedElement& e) {
  double hi = 0.0;
  for (int k = 0; k < 3; ++k) hi = std::max(hi, norm(mesh.nodes[std::size_t(e.nodes[k])]));
  return hi;
}

}  // namespace

void assign_element_layers(Mesh& mesh) {
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    auto& e = mesh.elements[i];
    if (!is_curved_kind(e.kind)) {
      e.layer = -1;
      continue;
    }
    double lo = min_node_radius(mesh, e);
    double hi = max_node_radius(mesh, e);
    e.layer = -1;
    for (std::size_t k = 0; k < mesh.layers.size(); ++k) {
      const auto& lay = mesh.layers[k];
      double tol = 1e-9 * std::max(1.0, lay.eps + lay.tau);
      if (std::fabs(lo - lay.eps) <= tol && std::fabs(hi - (lay.eps + lay.tau)) <= tol) {
        e.layer = int(k);
        break;
      }
    }
    if (e.layer < 0)
      throw ValidationError("element " + std::to_string(i) + " (" + to_string(e.kind) +
                            ", radii [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "]) lies in no declared layer");
  }
}

OPReport check_mesh(const Mesh& mesh, const CheckOptions& options) {
  OPReport report;
  report.deformation_checked = options.solution != nullptr;

  try {
    validate_mesh(mesh);
  } catch (const ValidationError& err) {
    report.problems.push_back(err.what());
  }

  // layer-level condition reports
  std::vector<LayerCheckResult> layers(mesh.layers.size());
  for (std::size_t k = 0; k < mesh.layers.size(); ++k) {
    const auto& lay = mesh.layers[k];
    auto& lr = layers[k];
    lr.layer = int(k);
    lr.eps = lay.eps;
    lr.tau = lay.tau;
    lr.n = lay.n;
    lr.coarsened = lay.coarsened;
    RadialSamples id{lay.eps, lay.eps + 0.5 * lay.tau, lay.eps + lay.tau};
    lr.mesh_report = condition_report(id, lay.n);
    if (options.solution) {
      const auto& sol = *options.solution;
      RadialSamples def{sol.r_at(lay.eps), sol.r_at(lay.eps + 0.5 * lay.tau),
                        sol.r_at(lay.eps + lay.tau)};
      lr.deform_report = condition_report(def, lay.n);
      lr.deform_checked = true;
    }
  }
  report.layers = std::move(layers);

  int n_elems = int(mesh.elements.size());
  std::vector<ElementCheckResult> results(static_cast<std::size_t>(n_elems));
  parallel_for(n_elems, [&](int i) {
    const auto& e = mesh.elements[std::size_t(i)];
    auto& r = results[std::size_t(i)];
    r.element = i;
    r.kind = e.kind;
    r.layer = e.layer;
    r.mesh_min_det = kNan;
    r.deform_min_det = kNan;

    bool analytic = (e.kind == ElementKind::A || e.kind == ElementKind::B) && e.layer >= 0;
    if (analytic) {
      const auto& lr = report.layers[std::size_t(e.layer)];
      r.method = "closed-form";
      r.mesh_ok = e.kind == ElementKind::A ? lr.mesh_report.verdict_a : lr.mesh_report.verdict_b;
      if (lr.deform_checked) {
        r.deform_checked = true;
        r.deform_ok =
            e.kind == ElementKind::A ? lr.deform_report.verdict_a : lr.deform_report.verdict_b;
      }
    } else {
      r.method = "certificate";
      Certificate cert = certify_positive(det_polynomial(mesh.control_net(i)), options.oracle);
      r.mesh_ok = cert.outcome == CertOutcome::Positive;
      if (cert.outcome == CertOutcome::Counterexample) {
        r.has_witness = true;
        r.witness = cert.witness;
        r.witness_value = cert.witness_value;
      }
      if (options.solution) {
        r.deform_checked = true;
        Certificate dc = certify_positive(
            det_polynomial(mesh.deformed_net(i, *options.solution)), options.oracle);
        r.deform_ok = dc.outcome == CertOutcome::Positive;
        if (dc.outcome == CertOutcome::Counterexample && !r.has_witness) {
          r.has_witness = true;
          r.witness = dc.witness;
          r.witness_value = dc.witness_value;
        }
      }
    }

    if (options.with_oracle) {
      r.sampled = true;
      ControlNet net = mesh.control_net(i);
      auto det_at = [&](Vec2 p) { return jacobian(net, p).det(); };
      r.mesh_min_det = sample_min_det(det_at, options.oracle).min_value;
      if (options.solution) {
        ControlNet dnet = mesh.deformed_net(i, *options.solution);
        auto ddet_at = [&](Vec2 p) { return jacobian(dnet, p).det(); };
        r.deform_min_det = sample_min_det(ddet_at, options.oracle).min_value;
      }
    }
  });

  for (const auto& r : results) {
    if (!r.mesh_ok || (r.deform_checked && !r.deform_ok)) report.failing.push_back(r.element);
    if (r.sampled) {
      // brute force must not contradict a decisive analytic verdict
      double scale = std::max(std::fabs(r.mesh_min_det), 1e-300);
      if (r.mesh_ok && r.mesh_min_det < -options.oracle.margin * scale)
        report.problems.push_back("element " + std::to_string(r.element) +
                                  ": sampled mesh determinant contradicts closed-form verdict");
      if (r.deform_checked && r.deform_ok && r.deform_min_det < -options.oracle.margin * scale)
        report.problems.push_back("element " + std::to_string(r.element) +
                                  ": sampled deformation determinant contradicts verdict");
    }
  }
  report.elements = std::move(results);
  report.pass = report.failing.empty() && report.problems.empty();
  return report;
}

}  // namespace cavmesh
