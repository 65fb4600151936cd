#include "ensnc/discretization.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "ensnc/assembly.hpp"

namespace ensnc {

namespace {

constexpr std::array<BoundaryTag, 3> kAllWalls{BoundaryTag::HotWall, BoundaryTag::ColdWall,
                                               BoundaryTag::Insulated};
constexpr std::array<BoundaryTag, 2> kHeatedWalls{BoundaryTag::HotWall, BoundaryTag::ColdWall};

}  // namespace

Discretization::Discretization(std::shared_ptr<const Mesh> mesh, TemperatureBoundary temperature_bc)
    : mesh_(std::move(mesh)),
      temperature_bc_(temperature_bc),
      velocity_(FeSpace(mesh_, SpaceKind::VectorP2).with_dirichlet(kAllWalls)),
      pressure_(mesh_, SpaceKind::ScalarP1),
      temperature_(temperature_bc == TemperatureBoundary::Cavity
                       ? FeSpace(mesh_, SpaceKind::ScalarP2).with_dirichlet(kHeatedWalls)
                       : FeSpace(mesh_, SpaceKind::ScalarP2).with_dirichlet(kAllWalls)),
      scalar_p2_(mesh_, SpaceKind::ScalarP2) {
  if (mesh_->boundary_edges.empty()) {
    throw std::invalid_argument("Discretization: mesh has no tagged boundary (call tag_boundary)");
  }
  mass_ = assemble_mass(scalar_p2_);
  stiffness_ = assemble_stiffness(scalar_p2_, 1.0);
  velocity_mass_ = block_diagonal(mass_, 2);
  velocity_stiffness_ = block_diagonal(stiffness_, 2);
  divergence_ = assemble_divergence(velocity_, pressure_);
  pressure_weights_ = integral_weights(pressure_);
  velocity_dirichlet_ = velocity_.dirichlet_indices();
  temperature_dirichlet_ = temperature_.dirichlet_indices();

  const int nv = velocity_dofs();
  const int np = pressure_dofs();
  const int n = scalar_p2_.node_count();
  // Vertex nearest the cavity centre (vertices are numbered row by row).
  const int side = mesh_->subdivisions + 1;
  pinned_pressure_ = (side / 2) * side + side / 2;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * mass_.nnz() + 2 * divergence_.nnz() + 1));
  const auto ro = mass_.row_offsets();
  const auto ci = mass_.col_indices();
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < n; ++r) {
      for (int k = ro[r]; k < ro[r + 1]; ++k) triplets.push_back({c * n + r, c * n + ci[k], 0.0});
    }
  }
  const auto bro = divergence_.row_offsets();
  const auto bci = divergence_.col_indices();
  const auto bv = divergence_.values();
  for (int i = 0; i < np; ++i) {
    for (int k = bro[i]; k < bro[i + 1]; ++k) {
      if (i != pinned_pressure_) triplets.push_back({nv + i, bci[k], -bv[k]});
      triplets.push_back({bci[k], nv + i, -bv[k]});
    }
  }
  triplets.push_back({nv + pinned_pressure_, nv + pinned_pressure_, 1.0});
  saddle_template_ = CsrMatrix::from_triplets(saddle_size(), saddle_size(), std::move(triplets));
  for (int c = 0; c < 2; ++c) {
    auto& map = block_map_[c];
    map.resize(mass_.nnz());
    for (int r = 0; r < n; ++r) {
      for (int k = ro[r]; k < ro[r + 1]; ++k) map[k] = saddle_template_.find(c * n + r, c * n + ci[k]);
    }
  }
}

CsrMatrix Discretization::scalar_operator(const FieldVector& advecting, double mass_coef,
                                          double convection_coef, double diffusion_coef) const {
  CsrMatrix s = assemble_convection_matrix(velocity_, advecting, scalar_p2_);
  s.scale(convection_coef);
  s.add_scaled(mass_coef, mass_);
  s.add_scaled(diffusion_coef, stiffness_);
  return s;
}

CsrMatrix Discretization::velocity_system(const FieldVector& advecting, double mass_coef,
                                          double convection_coef, double viscous_coef) const {
  const CsrMatrix s = scalar_operator(advecting, mass_coef, convection_coef, viscous_coef);
  CsrMatrix a = saddle_template_;
  auto dst = a.values();
  const auto src = s.values();
  for (int c = 0; c < 2; ++c) {
    const auto& map = block_map_[c];
    for (std::size_t k = 0; k < map.size(); ++k) dst[map[k]] = src[k];
  }
  a.replace_rows_with_identity(velocity_dirichlet_);
  return a;
}

CsrMatrix Discretization::temperature_system(const FieldVector& advecting, double mass_coef,
                                             double convection_coef, double diffusion_coef) const {
  CsrMatrix a = scalar_operator(advecting, mass_coef, convection_coef, diffusion_coef);
  a.replace_rows_with_identity(temperature_dirichlet_);
  return a;
}

Eigen::VectorXd Discretization::saddle_rhs(const Eigen::VectorXd& velocity_load) const {
  if (velocity_load.size() != velocity_dofs()) {
    throw std::invalid_argument("saddle_rhs: velocity load has wrong length");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(saddle_size());
  rhs.head(velocity_dofs()) = velocity_load;
  return rhs;
}

Eigen::VectorXd Discretization::velocity_part(const Eigen::VectorXd& x) const {
  return x.head(velocity_dofs());
}

Eigen::VectorXd Discretization::pressure_part(const Eigen::VectorXd& x) const {
  Eigen::VectorXd p = x.segment(velocity_dofs(), pressure_dofs());
  p.array() -= pressure_weights_.dot(p) / pressure_weights_.sum();
  return p;
}

double Discretization::velocity_l2(const Eigen::VectorXd& u) const {
  return std::sqrt(std::max(0.0, u.dot(velocity_mass_.multiply(u))));
}

double Discretization::temperature_l2(const Eigen::VectorXd& t) const {
  return std::sqrt(std::max(0.0, t.dot(mass_.multiply(t))));
}

double Discretization::velocity_h1_seminorm_squared(const Eigen::VectorXd& u) const {
  return u.dot(velocity_stiffness_.multiply(u));
}

}  // namespace ensnc
