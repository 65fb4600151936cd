#include "ensnc/fe_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ensnc {

namespace {

std::shared_ptr<const CsrMatrix> build_pattern(const FeSpace& space) {
  const int n = space.node_count();
  const int npc = space.nodes_per_cell();
  std::vector<std::vector<int>> rows(n);
  for (int t = 0; t < space.mesh().triangle_count(); ++t) {
    const auto nodes = space.cell_nodes(t);
    for (int a = 0; a < npc; ++a) {
      for (int b = 0; b < npc; ++b) rows[nodes[a]].push_back(nodes[b]);
    }
  }
  std::vector<int> offsets(n + 1, 0);
  std::vector<int> cols;
  for (int r = 0; r < n; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    offsets[r + 1] = offsets[r] + static_cast<int>(row.size());
    cols.insert(cols.end(), row.begin(), row.end());
  }
  const std::size_t nnz = cols.size();
  return std::make_shared<const CsrMatrix>(n, n, std::move(offsets), std::move(cols),
                                           std::vector<double>(nnz, 0.0));
}

int wall_priority(BoundaryTag tag) { return tag == BoundaryTag::Insulated ? 0 : 1; }

}  // namespace

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::VectorP2:
      return "VectorP2";
    case SpaceKind::ScalarP2:
      return "ScalarP2";
    case SpaceKind::ScalarP1:
      return "ScalarP1";
  }
  return "unknown";
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind) : mesh_(std::move(mesh)), kind_(kind) {
  if (!mesh_) throw std::invalid_argument("FeSpace: null mesh");
  node_count_ = kind_ == SpaceKind::ScalarP1 ? mesh_->vertex_count()
                                             : mesh_->vertex_count() + mesh_->edge_count();
  pattern_ = build_pattern(*this);
}

FeSpace FeSpace::with_dirichlet(std::span<const BoundaryTag> tags) const {
  FeSpace out = *this;
  out.dirichlet_.clear();
  const int nv = mesh_->vertex_count();
  // Per scalar node: -1 = free, otherwise the owning tag.
  std::vector<int> node_tag(node_count_, -1);
  auto claim = [&](int node, BoundaryTag tag) {
    const int current = node_tag[node];
    if (current < 0 || wall_priority(tag) > wall_priority(static_cast<BoundaryTag>(current))) {
      node_tag[node] = static_cast<int>(tag);
    }
  };
  for (const auto& be : mesh_->boundary_edges) {
    if (std::find(tags.begin(), tags.end(), be.tag) == tags.end()) continue;
    claim(be.vertices[0], be.tag);
    claim(be.vertices[1], be.tag);
    if (kind_ != SpaceKind::ScalarP1) claim(nv + be.edge, be.tag);
  }
  for (int c = 0; c < components(); ++c) {
    for (int node = 0; node < node_count_; ++node) {
      if (node_tag[node] >= 0) out.dirichlet_.push_back({dof(c, node), static_cast<BoundaryTag>(node_tag[node])});
    }
  }
  return out;
}

std::array<int, 6> FeSpace::cell_nodes(int triangle) const {
  const auto& t = mesh_->triangles[triangle];
  if (kind_ == SpaceKind::ScalarP1) return {t[0], t[1], t[2], -1, -1, -1};
  const auto& e = mesh_->triangle_edges[triangle];
  const int nv = mesh_->vertex_count();
  return {t[0], t[1], t[2], nv + e[0], nv + e[1], nv + e[2]};
}

Point FeSpace::node_point(int node) const {
  const int nv = mesh_->vertex_count();
  if (node < nv) return mesh_->vertices[node];
  const auto& e = mesh_->edges[node - nv];
  const Point& a = mesh_->vertices[e[0]];
  const Point& b = mesh_->vertices[e[1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

std::vector<int> FeSpace::dirichlet_indices() const {
  std::vector<int> idx;
  idx.reserve(dirichlet_.size());
  for (const auto& d : dirichlet_) idx.push_back(d.dof);
  return idx;
}

std::vector<char> FeSpace::dirichlet_mask() const {
  std::vector<char> mask(dof_count(), 0);
  for (const auto& d : dirichlet_) mask[d.dof] = 1;
  return mask;
}

void check_field(const FeSpace& space, const FieldVector& field, const char* where) {
  if (field.kind != space.kind() || field.coeffs.size() != space.dof_count()) {
    throw std::invalid_argument(std::string(where) + ": field of kind " + to_string(field.kind) +
                                " with " + std::to_string(field.coeffs.size()) +
                                " coefficients does not match space " + to_string(space.kind()) +
                                " with " + std::to_string(space.dof_count()) + " dofs");
  }
}

FieldVector zero_field(const FeSpace& space) {
  return {space.kind(), Eigen::VectorXd::Zero(space.dof_count())};
}

FieldVector interpolate(const ScalarFunction& f, const FeSpace& space) {
  if (space.kind() == SpaceKind::VectorP2) {
    throw std::invalid_argument("interpolate: scalar function into a vector space");
  }
  FieldVector out = zero_field(space);
  for (int n = 0; n < space.node_count(); ++n) out.coeffs[n] = f(space.node_point(n));
  return out;
}

FieldVector interpolate(const VectorFunction& f, const FeSpace& space) {
  if (space.kind() != SpaceKind::VectorP2) {
    throw std::invalid_argument("interpolate: vector function into a scalar space");
  }
  FieldVector out = zero_field(space);
  for (int n = 0; n < space.node_count(); ++n) {
    const auto v = f(space.node_point(n));
    out.coeffs[space.dof(0, n)] = v[0];
    out.coeffs[space.dof(1, n)] = v[1];
  }
  return out;
}

CellGeometry cell_geometry(const Mesh& mesh, int triangle) {
  const auto& t = mesh.triangles[triangle];
  const Point& a = mesh.vertices[t[0]];
  const Point& b = mesh.vertices[t[1]];
  const Point& c = mesh.vertices[t[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  CellGeometry g;
  g.area = 0.5 * det;
  g.grad_lambda[0] = {(b.y - c.y) / det, (c.x - b.x) / det};
  g.grad_lambda[1] = {(c.y - a.y) / det, (a.x - c.x) / det};
  g.grad_lambda[2] = {(a.y - b.y) / det, (b.x - a.x) / det};
  return g;
}

std::array<double, 6> p2_shape(const std::array<double, 3>& l) {
  return {l[0] * (2.0 * l[0] - 1.0), l[1] * (2.0 * l[1] - 1.0), l[2] * (2.0 * l[2] - 1.0),
          4.0 * l[0] * l[1],         4.0 * l[1] * l[2],         4.0 * l[2] * l[0]};
}

std::array<std::array<double, 2>, 6> p2_shape_gradients(const std::array<double, 3>& l,
                                                         const CellGeometry& g) {
  const auto& d = g.grad_lambda;
  std::array<std::array<double, 2>, 6> out{};
  for (int i = 0; i < 3; ++i) {
    const double s = 4.0 * l[i] - 1.0;
    out[i] = {s * d[i][0], s * d[i][1]};
  }
  for (int k = 0; k < 3; ++k) {
    const int i = k, j = (k + 1) % 3;
    out[3 + k] = {4.0 * (l[j] * d[i][0] + l[i] * d[j][0]), 4.0 * (l[j] * d[i][1] + l[i] * d[j][1])};
  }
  return out;
}

double evaluate_in_cell(const FeSpace& space, const Eigen::VectorXd& coeffs, int triangle,
                        const std::array<double, 3>& l, int component) {
  const auto nodes = space.cell_nodes(triangle);
  double v = 0.0;
  if (space.kind() == SpaceKind::ScalarP1) {
    for (int a = 0; a < 3; ++a) v += l[a] * coeffs[nodes[a]];
    return v;
  }
  const auto phi = p2_shape(l);
  for (int a = 0; a < 6; ++a) v += phi[a] * coeffs[space.dof(component, nodes[a])];
  return v;
}

std::array<double, 2> gradient_in_cell(const FeSpace& space, const Eigen::VectorXd& coeffs,
                                       int triangle, const std::array<double, 3>& l, int component) {
  const auto nodes = space.cell_nodes(triangle);
  const CellGeometry g = cell_geometry(space.mesh(), triangle);
  std::array<double, 2> grad{0.0, 0.0};
  if (space.kind() == SpaceKind::ScalarP1) {
    for (int a = 0; a < 3; ++a) {
      grad[0] += g.grad_lambda[a][0] * coeffs[nodes[a]];
      grad[1] += g.grad_lambda[a][1] * coeffs[nodes[a]];
    }
    return grad;
  }
  const auto dphi = p2_shape_gradients(l, g);
  for (int a = 0; a < 6; ++a) {
    const double c = coeffs[space.dof(component, nodes[a])];
    grad[0] += dphi[a][0] * c;
    grad[1] += dphi[a][1] * c;
  }
  return grad;
}

double evaluate(const FeSpace& space, const Eigen::VectorXd& coeffs, Point p, int component) {
  const auto t = space.mesh().locate(p);
  if (!t) throw std::out_of_range("evaluate: point outside the domain");
  return evaluate_in_cell(space, coeffs, *t, space.mesh().barycentric(*t, p), component);
}

std::array<double, 2> evaluate_gradient(const FeSpace& space, const Eigen::VectorXd& coeffs, Point p,
                                        int component) {
  const auto t = space.mesh().locate(p);
  if (!t) throw std::out_of_range("evaluate_gradient: point outside the domain");
  return gradient_in_cell(space, coeffs, *t, space.mesh().barycentric(*t, p), component);
}

}  // namespace ensnc
