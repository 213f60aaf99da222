#include "cavmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavmesh/op_conditions.hpp"
#include "cavmesh/oracle.hpp"

namespace cavmesh {

std::string to_string(ElementKind k) {
  switch (k) {
    case ElementKind::A: return "A";
    case ElementKind::B: return "B";
    case ElementKind::C: return "C";
    case ElementKind::D: return "D";
    case ElementKind::Straight: return "straight";
  }
  return "?";
}

ElementKind element_kind_from_string(const std::string& s) {
  if (s == "A") return ElementKind::A;
  if (s == "B") return ElementKind::B;
  if (s == "C") return ElementKind::C;
  if (s == "D") return ElementKind::D;
  if (s == "straight") return ElementKind::Straight;
  throw ValidationError("unknown element kind \"" + s + "\"");
}

ControlNet Mesh::control_net(int element) const {
  const auto& e = elements.at(element);
  ControlNet net;
  for (int k = 0; k < 6; ++k) net.pts[k] = nodes.at(e.nodes[k]);
  return net;
}

ControlNet Mesh::deformed_net(int element, const RadialSolution& sol) const {
  ControlNet net = control_net(element);
  for (auto& p : net.pts) {
    double radius = norm(p);
    double scale = sol.r_at(radius) / radius;
    p = scale * p;
  }
  return net;
}

namespace {

constexpr double kPi = std::numbers::pi;

/// Shared-node bookkeeping. Vertices live on registered circles at integer
/// multiples of pi/den; edge nodes are created once per vertex pair, so
/// conformity holds by construction. The midpoint of an edge is Euclidean
/// when both endpoints lie strictly inside the straight annulus
/// (mu_lo, mu_hi) and follows the polar rule otherwise.
class MeshBuilder {
 public:
  MeshBuilder(long long den, double mu_lo, double mu_hi, double rotation)
      : den_(den), mu_lo_(mu_lo), mu_hi_(mu_hi), rot_(rotation) {}

  int circle(double radius) {
    for (std::size_t i = 0; i < circle_radius_.size(); ++i)
      if (circle_radius_[i] == radius) return int(i);
    circle_radius_.push_back(radius);
    return int(circle_radius_.size()) - 1;
  }

  int vertex(int circle_id, long long angle_idx) {
    long long wrapped = ((angle_idx % (2 * den_)) + 2 * den_) % (2 * den_);
    auto key = std::make_pair(circle_id, wrapped);
    auto it = vertex_map_.find(key);
    if (it != vertex_map_.end()) return it->second;
    double radius = circle_radius_[std::size_t(circle_id)];
    double theta = double(wrapped) * kPi / double(den_) + rot_;
    int id = add_node(polar(radius, theta), radius, theta);
    vertex_map_.emplace(key, id);
    return id;
  }

  int edge_node(int a, int b) {
    std::pair<int, int> key = std::minmax(a, b);
    auto it = edge_map_.find(key);
    if (it != edge_map_.end()) return it->second;
    const NodeInfo& na = info_[std::size_t(a)];
    const NodeInfo& nb = info_[std::size_t(b)];
    int id;
    bool a_straight = na.radius > mu_lo_ && na.radius < mu_hi_;
    bool b_straight = nb.radius > mu_lo_ && nb.radius < mu_hi_;
    if (a_straight && b_straight) {
      Vec2 p = 0.5 * (na.p + nb.p);
      id = add_node(p, norm(p), std::atan2(p.y, p.x));
    } else {
      double radius = 0.5 * (na.radius + nb.radius);
      double d = std::remainder(nb.theta - na.theta, 2.0 * kPi);
      double theta = na.theta + 0.5 * d;
      id = add_node(polar(radius, theta), radius, theta);
    }
    edge_map_.emplace(key, id);
    return id;
  }

  CurvedElement element(ElementKind kind, int layer, int v1, int v2, int v3) {
    CurvedElement e;
    e.kind = kind;
    e.layer = layer;
    e.nodes = {v1, v2, v3, edge_node(v1, v2), edge_node(v1, v3), edge_node(v2, v3)};
    return e;
  }

  /// 2n alternating A/B elements on [eps, eps+tau] at lattice offset.
  void emit_layer(std::vector<CurvedElement>& out, double eps, double tau, int n,
                  long long offset, int layer, ElementKind kind_a, ElementKind kind_b) {
    long long unit = den_ / n;
    int ci = circle(eps);
    int co = circle(eps + tau);
    for (int j = 0; j < n; ++j) {
      long long aj = offset + 2 * j * unit;
      int a1 = vertex(ci, aj);
      int a2 = vertex(co, aj - unit);
      int a3 = vertex(co, aj + unit);
      out.push_back(element(kind_a, layer, a1, a2, a3));
      int b1 = vertex(co, aj + unit);
      int b2 = vertex(ci, aj + 2 * unit);
      int b3 = vertex(ci, aj);
      out.push_back(element(kind_b, layer, b1, b2, b3));
    }
  }

  /// Coarsened layer: n couples whose B elements are split along the radial
  /// midline into C/D, giving the inner circle the node pattern of a 2n
  /// layer below.
  void emit_coarsened_layer(std::vector<CurvedElement>& out, double eps, double tau, int n,
                            long long offset, int layer) {
    long long unit = den_ / n;
    int ci = circle(eps);
    int co = circle(eps + tau);
    for (int j = 0; j < n; ++j) {
      long long aj = offset + 2 * j * unit;
      int a1 = vertex(ci, aj);
      int a2 = vertex(co, aj - unit);
      int a3 = vertex(co, aj + unit);
      out.push_back(element(ElementKind::A, layer, a1, a2, a3));
      int b1 = vertex(co, aj + unit);
      int b2 = vertex(ci, aj + 2 * unit);
      int b3 = vertex(ci, aj);
      int m = vertex(ci, aj + unit);
      out.push_back(element(ElementKind::C, layer, b3, b1, m));
      out.push_back(element(ElementKind::D, layer, b2, m, b1));
    }
  }

  std::vector<Vec2> take_nodes() {
    std::vector<Vec2> out;
    out.reserve(info_.size());
    for (const auto& ni : info_) out.push_back(ni.p);
    return out;
  }

  long long den() const { return den_; }

 private:
  struct NodeInfo {
    Vec2 p;
    double radius;
    double theta;
  };

  int add_node(Vec2 p, double radius, double theta) {
    info_.push_back({p, radius, theta});
    return int(info_.size()) - 1;
  }

  long long den_;
  double mu_lo_, mu_hi_, rot_;
  std::vector<double> circle_radius_;
  std::vector<NodeInfo> info_;
  std::map<std::pair<int, long long>, int> vertex_map_;
  std::map<std::pair<int, int>, int> edge_map_;
};

void check_layer_args(double eps, double tau, int n) {
  if (!(eps > 0.0) || !(tau > 0.0))
    throw std::invalid_argument("layer: eps and tau must be positive");
  if (n < 2) throw std::invalid_argument("layer: n must be >= 2 couples");
}

void warn_if_below_validity(Mesh& mesh, double eps, double tau, int n) {
  int n_hat = mesh_validity_n(eps / tau);
  if (n < n_hat)
    mesh.warnings.push_back("layer at eps = " + std::to_string(eps) + " built with n = " +
                            std::to_string(n) + " below the mesh-validity count " +
                            std::to_string(n_hat));
}

}  // namespace

Mesh build_layer(double eps, double tau, int n, double angular_offset) {
  check_layer_args(eps, tau, n);
  MeshBuilder b(2LL * n, 1e300, 1e300, angular_offset);
  Mesh mesh;
  mesh.rho = eps;
  mesh.mu = eps + tau;
  mesh.layers.push_back({eps, tau, n, false});
  b.emit_layer(mesh.elements, eps, tau, n, 0, 0, ElementKind::A, ElementKind::B);
  mesh.nodes = b.take_nodes();
  warn_if_below_validity(mesh, eps, tau, n);
  return mesh;
}

Mesh coarsen_split(double eps, double tau, int n, double tau_out, double angular_offset) {
  check_layer_args(eps, tau, n);
  if (!(tau_out > 0.0)) throw std::invalid_argument("coarsen_split: tau_out must be positive");
  if (n % 2 != 0) throw std::invalid_argument("coarsen_split: n must be even");
  if (n / 2 < 2) throw std::invalid_argument("coarsen_split: n/2 must still be >= 2");

  MeshBuilder b(2LL * n, 1e300, 1e300, angular_offset);
  Mesh mesh;
  mesh.rho = eps;
  mesh.mu = eps + tau + tau_out;
  mesh.layers.push_back({eps, tau, n, false});
  mesh.layers.push_back({eps + tau, tau_out, n / 2, true});
  b.emit_layer(mesh.elements, eps, tau, n, 0, 0, ElementKind::A, ElementKind::B);
  b.emit_coarsened_layer(mesh.elements, eps + tau, tau_out, n / 2, b.den() / n, 1);
  mesh.nodes = b.take_nodes();
  warn_if_below_validity(mesh, eps, tau, n);
  warn_if_below_validity(mesh, eps + tau, tau_out, n / 2);
  return mesh;
}

namespace {

struct PlannedLayer {
  double eps, tau;
  LayerPlan plan;
};

std::vector<PlannedLayer> plan_layers(const RadialSolution& sol, double mu,
                                      const MeshStrategy& st) {
  std::vector<PlannedLayer> out;
  double rho = sol.rho();

  if (!st.explicit_layers.empty()) {
    double expect = rho;
    for (auto [eps, tau] : st.explicit_layers) {
      if (std::fabs(eps - expect) > 1e-9)
        throw PlanningError("explicit layers not contiguous at eps = " + std::to_string(eps));
      out.push_back({eps, tau, deformation_n(sol, eps, tau)});
      expect = eps + tau;
    }
    if (std::fabs(expect - mu) > 1e-9)
      throw PlanningError("explicit layers end at " + std::to_string(expect) +
                          " instead of mu = " + std::to_string(mu));
    return out;
  }

  double eps = rho;
  double tau = st.first_tau > 0.0 ? st.first_tau : std::min(rho, mu - rho);
  while (eps < mu - 1e-12) {
    if (int(out.size()) >= st.max_layers)
      throw PlanningError("layer planning exceeded " + std::to_string(st.max_layers) +
                          " layers before reaching mu");
    tau = std::min({tau, mu - eps, sol.tau_cap(eps)});
    if (mu - eps - tau < 0.3 * tau) tau = mu - eps;  // land exactly on mu
    bool placed = false;
    for (int attempt = 0; attempt < 50 && !placed; ++attempt) {
      try {
        out.push_back({eps, tau, deformation_n(sol, eps, tau)});
        placed = true;
      } catch (const LayerTooThick&) {
        tau *= 0.5;
        if (tau < 1e-12)
          throw PlanningError("no admissible layer thickness at eps = " + std::to_string(eps));
      }
    }
    if (!placed)
      throw PlanningError("no admissible layer thickness at eps = " + std::to_string(eps));
    eps += tau;
    tau *= st.growth;
  }
  if (out.empty()) throw PlanningError("empty layer schedule: mu must exceed rho");
  return out;
}

struct LayerCounts {
  std::vector<int> n;
  std::vector<bool> coarsened;
};

/// Counts never grow outward (conformity allows only equal or halved), so a
/// layer's count must cover every requirement from that layer outward,
/// including the straight rings.
LayerCounts assign_counts(const std::vector<PlannedLayer>& layers, const MeshStrategy& st,
                          int ring_requirement) {
  std::vector<int> suffix(layers.size());
  int run = std::max(ring_requirement, 2);
  for (int k = int(layers.size()) - 1; k >= 0; --k) {
    run = std::max(run, layers[std::size_t(k)].plan.n_tilde);
    suffix[std::size_t(k)] = run;
  }

  LayerCounts out;
  out.n.resize(layers.size());
  out.coarsened.assign(layers.size(), false);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    int chosen;
    if (k == 0) {
      chosen = suffix[0];
      // an even start keeps the halving option open downstream
      if (st.allow_coarsen && chosen % 2 == 1) ++chosen;
    } else {
      int base = out.n[k - 1];
      if (st.allow_coarsen && base % 2 == 0 && base / 2 >= suffix[k]) {
        chosen = base / 2;
        out.coarsened[k] = true;
      } else {
        chosen = base;
      }
    }
    auto ov = st.n_override.find(int(k));
    if (ov != st.n_override.end()) {
      chosen = ov->second;
      if (k > 0 && chosen != out.n[k - 1] && 2 * chosen != out.n[k - 1])
        throw PlanningError("override n = " + std::to_string(chosen) + " for layer " +
                            std::to_string(k) + " breaks conformity with the layer below (" +
                            std::to_string(out.n[k - 1]) + ")");
      out.coarsened[k] = k > 0 && 2 * chosen == out.n[k - 1];
      if (chosen < layers[k].plan.n_hat)
        throw PlanningError("override n = " + std::to_string(chosen) + " for layer " +
                            std::to_string(k) + " is below the mesh-validity count " +
                            std::to_string(layers[k].plan.n_hat));
    } else if (chosen < suffix[k]) {
      throw PlanningError("layer " + std::to_string(k) + " needs n >= " +
                          std::to_string(suffix[k]) +
                          " but conformity with the layer below caps it at " +
                          std::to_string(chosen));
    }
    if (chosen < 2)
      throw PlanningError("coarsening below 2 couples at layer " + std::to_string(k));
    out.n[k] = chosen;
  }
  return out;
}

std::vector<std::pair<double, double>> ring_schedule(double mu, double growth) {
  std::vector<std::pair<double, double>> rings;
  double t = mu;
  while (t < 1.0 - 1e-12) {
    double t_next = std::min(t * growth, 1.0);
    if (1.0 - t_next < 0.3 * (t_next - t)) t_next = 1.0;
    rings.push_back({t, t_next});
    t = t_next;
  }
  return rings;
}

/// The straight rings have no closed-form condition; probe a representative
/// A/B pair built with the real node rule and certify its deformed map.
bool ring_deformation_ok(const RadialSolution& sol, double t0, double t1, int n, double mu) {
  MeshBuilder b(2LL * n, mu, 1.0, 0.0);
  std::vector<CurvedElement> elems;
  b.emit_layer(elems, t0, t1 - t0, n, 0, -1, ElementKind::Straight, ElementKind::Straight);
  auto nodes = b.take_nodes();
  OracleConfig cfg;
  for (int e = 0; e < 2; ++e) {
    ControlNet net;
    for (int k = 0; k < 6; ++k) {
      Vec2 p = nodes[std::size_t(elems[std::size_t(e)].nodes[k])];
      double rad = norm(p);
      // chord midpoints of very wide elements can leave the solved annulus;
      // such a count cannot represent the deformation at all
      if (!(rad >= sol.rho())) return false;
      net.pts[k] = (sol.r_at(rad) / rad) * p;
    }
    if (certify_positive(det_polynomial(net), cfg).outcome != CertOutcome::Positive)
      return false;
  }
  return true;
}

int ring_required_n(const RadialSolution& sol, double t0, double t1, double mu) {
  for (int n = 2; n <= 4096; ++n)
    if (ring_deformation_ok(sol, t0, t1, n, mu)) return n;
  throw PlanningError("no straight-ring couple count up to 4096 keeps the deformation "
                      "orientation preserving on [" + std::to_string(t0) + ", " +
                      std::to_string(t1) + "]");
}

void validate_built_elements(const Mesh& mesh) {
  OracleConfig cfg;
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    const auto& e = mesh.elements[i];
    if (e.kind == ElementKind::A || e.kind == ElementKind::B) continue;  // closed forms below
    Certificate cert = certify_positive(det_polynomial(mesh.control_net(int(i))), cfg);
    if (cert.outcome != CertOutcome::Positive)
      throw PlanningError("element " + std::to_string(i) + " (" + to_string(e.kind) +
                          ") failed the map positivity certificate");
  }
  for (std::size_t k = 0; k < mesh.layers.size(); ++k) {
    const auto& lay = mesh.layers[k];
    RadialSamples id{lay.eps, lay.eps + 0.5 * lay.tau, lay.eps + lay.tau};
    if (!check_type_a(id, lay.n).ok || !check_type_b(id, lay.n).ok)
      throw PlanningError("layer " + std::to_string(k) +
                          " mesh map is not orientation preserving at n = " +
                          std::to_string(lay.n));
  }
}

}  // namespace

Mesh build_mesh(const RadialSolution& sol, double mu, const MeshStrategy& strategy) {
  double rho = sol.rho();
  if (!(rho < mu && mu < 1.0))
    throw std::invalid_argument("build_mesh: need rho < mu < 1");

  auto layers = plan_layers(sol, mu, strategy);

  double ring_growth = strategy.outer_growth > 0.0 ? strategy.outer_growth : 2.0;
  auto rings = ring_schedule(mu, ring_growth);
  int ring_requirement = 2;
  for (auto [t0, t1] : rings)
    ring_requirement = std::max(ring_requirement, ring_required_n(sol, t0, t1, mu));

  auto counts = assign_counts(layers, strategy, ring_requirement);

  Mesh mesh;
  mesh.rho = rho;
  mesh.mu = mu;

  long long den = 2LL * counts.n[0];
  MeshBuilder b(den, mu, 1.0, 0.0);

  long long offset = 0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    mesh.layers.push_back({layers[k].eps, layers[k].tau, counts.n[k], counts.coarsened[k]});
    if (counts.coarsened[k])
      b.emit_coarsened_layer(mesh.elements, layers[k].eps, layers[k].tau, counts.n[k], offset,
                             int(k));
    else
      b.emit_layer(mesh.elements, layers[k].eps, layers[k].tau, counts.n[k], offset, int(k),
                   ElementKind::A, ElementKind::B);
    offset += den / counts.n[k];
  }

  int n_out = counts.n.back();
  for (auto [t0, t1] : rings) {
    b.emit_layer(mesh.elements, t0, t1 - t0, n_out, offset, -1, ElementKind::Straight,
                 ElementKind::Straight);
    offset += den / n_out;
  }

  mesh.nodes = b.take_nodes();
  validate_built_elements(mesh);
  return mesh;
}

void validate_mesh(const Mesh& mesh) {
  int n_nodes = int(mesh.nodes.size());
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;  // (v,v) -> (elem, mid)
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    const auto& e = mesh.elements[i];
    for (int k = 0; k < 6; ++k)
      if (e.nodes[k] < 0 || e.nodes[k] >= n_nodes)
        throw ValidationError("element " + std::to_string(i) + " references missing node " +
                              std::to_string(e.nodes[k]));
    const int pairs[3][3] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}};
    for (const auto& pr : pairs) {
      std::pair<int, int> key = std::minmax(e.nodes[pr[0]], e.nodes[pr[1]]);
      edges[key].push_back({int(i), e.nodes[pr[2]]});
    }
  }
  for (const auto& [key, uses] : edges) {
    if (uses.size() > 2)
      throw ValidationError("edge (" + std::to_string(key.first) + ", " +
                            std::to_string(key.second) + ") shared by more than two elements");
    if (uses.size() == 2 && uses[0].second != uses[1].second)
      throw ValidationError("elements " + std::to_string(uses[0].first) + " and " +
                            std::to_string(uses[1].first) +
                            " disagree on the midpoint of a shared edge");
  }
}

}  // namespace cavmesh
