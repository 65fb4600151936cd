#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ensnc/mesh.hpp"
#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

enum class SpaceKind { VectorP2, ScalarP2, ScalarP1 };

const char* to_string(SpaceKind kind);

struct DirichletDof {
  int dof = 0;
  BoundaryTag tag = BoundaryTag::Insulated;
};

/// Continuous Lagrange space on a triangulation.
///
/// Scalar nodes are numbered vertices first (0..V-1), then edge midpoints
/// (V + edge index). A VectorP2 space stores component c of node n at
/// dof c * node_count() + n.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind);

  /// Copy of this space whose Dirichlet set is every node lying on a boundary
  /// edge carrying one of `tags` (all components for vector spaces). A corner
  /// node touching both a vertical wall and an insulated wall is attributed to
  /// the vertical wall.
  FeSpace with_dirichlet(std::span<const BoundaryTag> tags) const;

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  bool same_mesh(const FeSpace& other) const { return mesh_ == other.mesh_; }

  SpaceKind kind() const { return kind_; }
  int components() const { return kind_ == SpaceKind::VectorP2 ? 2 : 1; }
  int node_count() const { return node_count_; }
  int dof_count() const { return components() * node_count_; }
  int nodes_per_cell() const { return kind_ == SpaceKind::ScalarP1 ? 3 : 6; }
  int dof(int component, int node) const { return component * node_count_ + node; }

  /// Local-to-global scalar node map; entries past nodes_per_cell() are -1.
  std::array<int, 6> cell_nodes(int triangle) const;
  Point node_point(int node) const;

  const std::vector<DirichletDof>& dirichlet_dofs() const { return dirichlet_; }
  std::vector<int> dirichlet_indices() const;
  std::vector<char> dirichlet_mask() const;

  /// Scalar (single component) sparsity pattern shared by every operator
  /// assembled on this space; values are zero.
  const CsrMatrix& scalar_pattern() const { return *pattern_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  SpaceKind kind_;
  int node_count_ = 0;
  std::shared_ptr<const CsrMatrix> pattern_;
  std::vector<DirichletDof> dirichlet_;
};

/// Coefficients of a discrete field, indexed by global dof.
struct FieldVector {
  SpaceKind kind = SpaceKind::ScalarP2;
  Eigen::VectorXd coeffs;
};

/// Throws std::invalid_argument unless the field matches the space layout.
void check_field(const FeSpace& space, const FieldVector& field, const char* where);

FieldVector zero_field(const FeSpace& space);

using ScalarFunction = std::function<double(Point)>;
using VectorFunction = std::function<std::array<double, 2>(Point)>;

/// Nodal interpolation into a scalar space.
FieldVector interpolate(const ScalarFunction& f, const FeSpace& space);
/// Nodal interpolation into a VectorP2 space.
FieldVector interpolate(const VectorFunction& f, const FeSpace& space);

// Reference-element machinery ------------------------------------------------

/// Affine data of one triangle: area and the constant barycentric gradients.
struct CellGeometry {
  double area = 0.0;
  std::array<std::array<double, 2>, 3> grad_lambda{};
};

CellGeometry cell_geometry(const Mesh& mesh, int triangle);

/// Quadratic shape functions, local order v0, v1, v2, e01, e12, e20.
std::array<double, 6> p2_shape(const std::array<double, 3>& l);
std::array<std::array<double, 2>, 6> p2_shape_gradients(const std::array<double, 3>& l,
                                                         const CellGeometry& g);

/// Value of one component of a field at barycentric point l of a triangle.
double evaluate_in_cell(const FeSpace& space, const Eigen::VectorXd& coeffs, int triangle,
                        const std::array<double, 3>& l, int component = 0);
std::array<double, 2> gradient_in_cell(const FeSpace& space, const Eigen::VectorXd& coeffs,
                                       int triangle, const std::array<double, 3>& l,
                                       int component = 0);

/// Point evaluation; throws std::out_of_range outside the unit square.
double evaluate(const FeSpace& space, const Eigen::VectorXd& coeffs, Point p, int component = 0);
std::array<double, 2> evaluate_gradient(const FeSpace& space, const Eigen::VectorXd& coeffs, Point p,
                                        int component = 0);

}  // namespace ensnc
