#include "ensnc/assembly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "ensnc/quadrature.hpp"

namespace ensnc {

namespace {

/// Shape values at the assembly quadrature points (identical on every cell).
struct ReferenceTables {
  const QuadratureRule& rule = triangle_rule(kAssemblyDegree);
  std::vector<std::array<double, 6>> p2;

  ReferenceTables() {
    for (const auto& l : rule.points) p2.push_back(p2_shape(l));
  }
};

const ReferenceTables& tables() {
  static const ReferenceTables t;
  return t;
}

Point physical_point(const Mesh& mesh, int triangle, const std::array<double, 3>& l) {
  const auto& t = mesh.triangles[triangle];
  Point p;
  for (int k = 0; k < 3; ++k) {
    p.x += l[k] * mesh.vertices[t[k]].x;
    p.y += l[k] * mesh.vertices[t[k]].y;
  }
  return p;
}

void require_p2(const FeSpace& space, const char* where) {
  if (space.kind() == SpaceKind::ScalarP1) {
    throw std::invalid_argument(std::string(where) + ": requires a P2 space");
  }
}

void require_same_mesh(const FeSpace& a, const FeSpace& b, const char* where) {
  if (!a.same_mesh(b)) throw std::invalid_argument(std::string(where) + ": spaces live on different meshes");
}

template <typename Kernel>
CsrMatrix assemble_scalar(const FeSpace& space, Kernel&& kernel) {
  CsrMatrix out = space.scalar_pattern();
  const int npc = space.nodes_per_cell();
  double local[6][6];
  for (int t = 0; t < space.mesh().triangle_count(); ++t) {
    for (auto& row : local) for (double& v : row) v = 0.0;
    kernel(t, local);
    const auto nodes = space.cell_nodes(t);
    for (int a = 0; a < npc; ++a) {
      for (int b = 0; b < npc; ++b) out.add_to(nodes[a], nodes[b], local[a][b]);
    }
  }
  return out;
}

/// Advecting velocity and its divergence at every quadrature point of a cell.
struct AdvectionAtPoints {
  std::vector<std::array<double, 2>> w;
  std::vector<double> div;
};

AdvectionAtPoints advection_at_points(const FeSpace& velocity, const Eigen::VectorXd& w, int t,
                                      const CellGeometry& g) {
  const auto& tab = tables();
  const auto nodes = velocity.cell_nodes(t);
  const std::size_t nq = tab.rule.size();
  AdvectionAtPoints out{std::vector<std::array<double, 2>>(nq), std::vector<double>(nq)};
  for (std::size_t q = 0; q < nq; ++q) {
    const auto dphi = p2_shape_gradients(tab.rule.points[q], g);
    double w0 = 0.0, w1 = 0.0, div = 0.0;
    for (int a = 0; a < 6; ++a) {
      const double c0 = w[velocity.dof(0, nodes[a])];
      const double c1 = w[velocity.dof(1, nodes[a])];
      w0 += tab.p2[q][a] * c0;
      w1 += tab.p2[q][a] * c1;
      div += dphi[a][0] * c0 + dphi[a][1] * c1;
    }
    out.w[q] = {w0, w1};
    out.div[q] = div;
  }
  return out;
}

void check_advecting(const FeSpace& velocity, const FieldVector& w, const FeSpace& target,
                     const char* where) {
  if (velocity.kind() != SpaceKind::VectorP2) {
    throw std::invalid_argument(std::string(where) + ": advecting space must be VectorP2");
  }
  check_field(velocity, w, where);
  require_same_mesh(velocity, target, where);
  require_p2(target, where);
}

}  // namespace

CsrMatrix block_diagonal(const CsrMatrix& scalar, int copies) {
  const int n = scalar.rows();
  std::vector<int> offsets(copies * n + 1, 0);
  std::vector<int> cols;
  std::vector<double> vals;
  cols.reserve(static_cast<std::size_t>(copies) * scalar.nnz());
  vals.reserve(cols.capacity());
  const auto ro = scalar.row_offsets();
  const auto ci = scalar.col_indices();
  const auto sv = scalar.values();
  for (int c = 0; c < copies; ++c) {
    for (int r = 0; r < n; ++r) {
      for (int k = ro[r]; k < ro[r + 1]; ++k) {
        cols.push_back(c * n + ci[k]);
        vals.push_back(sv[k]);
      }
      offsets[c * n + r + 1] = static_cast<int>(cols.size());
    }
  }
  return CsrMatrix(copies * n, copies * scalar.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix assemble_mass(const FeSpace& space) {
  const auto& tab = tables();
  const Mesh& mesh = space.mesh();
  CsrMatrix scalar;
  if (space.kind() == SpaceKind::ScalarP1) {
    scalar = assemble_scalar(space, [&](int t, double (*local)[6]) {
      const double jac = 2.0 * mesh.signed_area(t);
      for (std::size_t q = 0; q < tab.rule.size(); ++q) {
        const auto& l = tab.rule.points[q];
        const double jw = jac * tab.rule.weights[q];
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) local[a][b] += jw * l[a] * l[b];
      }
    });
    return scalar;
  }
  scalar = assemble_scalar(space, [&](int t, double (*local)[6]) {
    const double jac = 2.0 * mesh.signed_area(t);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto& phi = tab.p2[q];
      const double jw = jac * tab.rule.weights[q];
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) local[a][b] += jw * phi[a] * phi[b];
    }
  });
  return space.kind() == SpaceKind::VectorP2 ? block_diagonal(scalar, 2) : scalar;
}

CsrMatrix assemble_stiffness(const FeSpace& space, double coefficient) {
  if (!(coefficient > 0.0)) {
    throw std::invalid_argument("assemble_stiffness: coefficient must be positive, got " +
                                std::to_string(coefficient));
  }
  const auto& tab = tables();
  const Mesh& mesh = space.mesh();
  CsrMatrix scalar;
  if (space.kind() == SpaceKind::ScalarP1) {
    scalar = assemble_scalar(space, [&](int t, double (*local)[6]) {
      const CellGeometry g = cell_geometry(mesh, t);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          local[a][b] = coefficient * g.area *
                        (g.grad_lambda[a][0] * g.grad_lambda[b][0] + g.grad_lambda[a][1] * g.grad_lambda[b][1]);
        }
    });
    return scalar;
  }
  scalar = assemble_scalar(space, [&](int t, double (*local)[6]) {
    const CellGeometry g = cell_geometry(mesh, t);
    const double jac = 2.0 * g.area;
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto dphi = p2_shape_gradients(tab.rule.points[q], g);
      const double jw = coefficient * jac * tab.rule.weights[q];
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) local[a][b] += jw * (dphi[a][0] * dphi[b][0] + dphi[a][1] * dphi[b][1]);
    }
  });
  return space.kind() == SpaceKind::VectorP2 ? block_diagonal(scalar, 2) : scalar;
}

CsrMatrix assemble_divergence(const FeSpace& velocity, const FeSpace& pressure) {
  if (velocity.kind() != SpaceKind::VectorP2 || pressure.kind() != SpaceKind::ScalarP1) {
    throw std::invalid_argument("assemble_divergence: expects VectorP2 velocity and ScalarP1 pressure");
  }
  require_same_mesh(velocity, pressure, "assemble_divergence");
  const auto& tab = tables();
  const Mesh& mesh = velocity.mesh();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 36);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const double jac = 2.0 * g.area;
    double local[3][2][6] = {};
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto& l = tab.rule.points[q];
      const auto dphi = p2_shape_gradients(l, g);
      const double jw = jac * tab.rule.weights[q];
      for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c)
          for (int b = 0; b < 6; ++b) local[i][c][b] += jw * l[i] * dphi[b][c];
    }
    const auto pn = pressure.cell_nodes(t);
    const auto vn = velocity.cell_nodes(t);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 6; ++b) triplets.push_back({pn[i], velocity.dof(c, vn[b]), local[i][c][b]});
  }
  return CsrMatrix::from_triplets(pressure.dof_count(), velocity.dof_count(), std::move(triplets));
}

CsrMatrix assemble_convection_matrix(const FeSpace& velocity, const FieldVector& advecting,
                                     const FeSpace& target) {
  check_advecting(velocity, advecting, target, "assemble_convection_matrix");
  const auto& tab = tables();
  const Mesh& mesh = target.mesh();
  CsrMatrix scalar = assemble_scalar(target, [&](int t, double (*local)[6]) {
    const CellGeometry g = cell_geometry(mesh, t);
    const double jac = 2.0 * g.area;
    const auto adv = advection_at_points(velocity, advecting.coeffs, t, g);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto& phi = tab.p2[q];
      const auto dphi = p2_shape_gradients(tab.rule.points[q], g);
      const double jw = jac * tab.rule.weights[q];
      const auto& w = adv.w[q];
      const double half_div = 0.5 * adv.div[q];
      for (int b = 0; b < 6; ++b) {
        const double trial = w[0] * dphi[b][0] + w[1] * dphi[b][1] + half_div * phi[b];
        for (int a = 0; a < 6; ++a) local[a][b] += jw * trial * phi[a];
      }
    }
  });
  return target.kind() == SpaceKind::VectorP2 ? block_diagonal(scalar, 2) : scalar;
}

Eigen::VectorXd apply_convection(const FeSpace& velocity, const FieldVector& advecting,
                                 const FeSpace& target, const FieldVector& transported) {
  check_advecting(velocity, advecting, target, "apply_convection");
  check_field(target, transported, "apply_convection");
  const auto& tab = tables();
  const Mesh& mesh = target.mesh();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(target.dof_count());
  const int ncomp = target.components();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const double jac = 2.0 * g.area;
    const auto adv = advection_at_points(velocity, advecting.coeffs, t, g);
    const auto nodes = target.cell_nodes(t);
    for (int c = 0; c < ncomp; ++c) {
      double local[6] = {};
      for (std::size_t q = 0; q < tab.rule.size(); ++q) {
        const auto& phi = tab.p2[q];
        const auto dphi = p2_shape_gradients(tab.rule.points[q], g);
        double z = 0.0, dzx = 0.0, dzy = 0.0;
        for (int b = 0; b < 6; ++b) {
          const double coef = transported.coeffs[target.dof(c, nodes[b])];
          z += phi[b] * coef;
          dzx += dphi[b][0] * coef;
          dzy += dphi[b][1] * coef;
        }
        const double integrand = adv.w[q][0] * dzx + adv.w[q][1] * dzy + 0.5 * adv.div[q] * z;
        const double jw = jac * tab.rule.weights[q];
        for (int a = 0; a < 6; ++a) local[a] += jw * integrand * phi[a];
      }
      for (int a = 0; a < 6; ++a) out[target.dof(c, nodes[a])] += local[a];
    }
  }
  return out;
}

Eigen::VectorXd assemble_buoyancy(const FeSpace& temperature, const FieldVector& temperature_field,
                                  const FeSpace& velocity, double pr, double ra,
                                  std::array<double, 2> xi) {
  if (temperature.kind() != SpaceKind::ScalarP2 || velocity.kind() != SpaceKind::VectorP2) {
    throw std::invalid_argument("assemble_buoyancy: expects ScalarP2 temperature and VectorP2 velocity");
  }
  require_same_mesh(temperature, velocity, "assemble_buoyancy");
  check_field(temperature, temperature_field, "assemble_buoyancy");
  const auto& tab = tables();
  const Mesh& mesh = temperature.mesh();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(velocity.dof_count());
  const double scale = pr * ra;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double jac = 2.0 * mesh.signed_area(t);
    const auto nodes = temperature.cell_nodes(t);
    double local[6] = {};
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto& phi = tab.p2[q];
      double temp = 0.0;
      for (int b = 0; b < 6; ++b) temp += phi[b] * temperature_field.coeffs[nodes[b]];
      const double jw = jac * tab.rule.weights[q];
      for (int a = 0; a < 6; ++a) local[a] += jw * temp * phi[a];
    }
    for (int c = 0; c < 2; ++c) {
      if (xi[c] == 0.0) continue;
      for (int a = 0; a < 6; ++a) out[velocity.dof(c, nodes[a])] += scale * xi[c] * local[a];
    }
  }
  return out;
}

Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f) {
  if (space.kind() == SpaceKind::VectorP2) {
    throw std::invalid_argument("assemble_load: scalar source on a vector space");
  }
  const auto& tab = tables();
  const Mesh& mesh = space.mesh();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  const int npc = space.nodes_per_cell();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double jac = 2.0 * mesh.signed_area(t);
    const auto nodes = space.cell_nodes(t);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto& l = tab.rule.points[q];
      const double fq = f(physical_point(mesh, t, l)) * jac * tab.rule.weights[q];
      for (int a = 0; a < npc; ++a) out[nodes[a]] += fq * (npc == 3 ? l[a] : tab.p2[q][a]);
    }
  }
  return out;
}

Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFunction& f) {
  if (space.kind() != SpaceKind::VectorP2) {
    throw std::invalid_argument("assemble_load: vector source on a scalar space");
  }
  const auto& tab = tables();
  const Mesh& mesh = space.mesh();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double jac = 2.0 * mesh.signed_area(t);
    const auto nodes = space.cell_nodes(t);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const auto fq = f(physical_point(mesh, t, tab.rule.points[q]));
      const double jw = jac * tab.rule.weights[q];
      for (int a = 0; a < 6; ++a) {
        out[space.dof(0, nodes[a])] += jw * fq[0] * tab.p2[q][a];
        out[space.dof(1, nodes[a])] += jw * fq[1] * tab.p2[q][a];
      }
    }
  }
  return out;
}

Eigen::VectorXd integral_weights(const FeSpace& space) {
  return assemble_load(space, ScalarFunction([](Point) { return 1.0; }));
}

}  // namespace ensnc
