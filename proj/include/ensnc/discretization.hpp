#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "ensnc/fe_space.hpp"
#include "ensnc/mesh.hpp"
#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

/// Which boundary nodes carry Dirichlet temperature data.
enum class TemperatureBoundary {
  Cavity,        // hot and cold walls; insulated walls natural
  AllDirichlet,  // every boundary node (manufactured-solution runs)
};

/// Taylor-Hood P2-P1 velocity/pressure and P2 temperature on one mesh, with
/// the time-independent operators and the layout of the coupled
/// velocity-pressure system.
///
/// Unknown ordering of the coupled system: velocity (2N) then pressure (V):
///
///   [ S      -B^T ] [u]   [f]
///   [ -B      0   ] [p] = [0]
///
/// with S = a M + c N(adv) + d K applied to each velocity component and the
/// rows of Dirichlet velocity dofs replaced by identity rows. The pressure is
/// determined up to a constant; the continuity row of one interior vertex
/// (the pinned dof) is replaced by p_pin = 0 and pressure_part() shifts the
/// result to zero mean. Because the velocity vanishes on the boundary the
/// dropped row is implied by the others, so the velocity and the zero-mean
/// pressure coincide with those of the multiplier-constrained system while
/// the factorization avoids a dense row and column.
class Discretization {
 public:
  explicit Discretization(std::shared_ptr<const Mesh> mesh,
                          TemperatureBoundary temperature_bc = TemperatureBoundary::Cavity);

  const Mesh& mesh() const { return *mesh_; }
  double h() const { return mesh_->h; }
  TemperatureBoundary temperature_bc() const { return temperature_bc_; }

  const FeSpace& velocity() const { return velocity_; }
  const FeSpace& pressure() const { return pressure_; }
  const FeSpace& temperature() const { return temperature_; }

  /// Scalar P2 mass and unit-coefficient stiffness without boundary rows.
  const CsrMatrix& scalar_mass() const { return mass_; }
  const CsrMatrix& scalar_stiffness() const { return stiffness_; }
  /// Vector versions (block diagonal) for norms of velocity fields.
  const CsrMatrix& velocity_mass() const { return velocity_mass_; }
  const CsrMatrix& velocity_stiffness() const { return velocity_stiffness_; }
  const CsrMatrix& divergence() const { return divergence_; }
  const Eigen::VectorXd& pressure_weights() const { return pressure_weights_; }

  int velocity_dofs() const { return velocity_.dof_count(); }
  int pressure_dofs() const { return pressure_.dof_count(); }
  int saddle_size() const { return velocity_dofs() + pressure_dofs(); }
  /// Pressure dof whose continuity row is replaced by p = 0.
  int pinned_pressure_dof() const { return pinned_pressure_; }

  CsrMatrix velocity_system(const FieldVector& advecting, double mass_coef, double convection_coef,
                            double viscous_coef) const;
  /// a M + c N*(adv) + d K on the temperature space with Dirichlet identity rows.
  CsrMatrix temperature_system(const FieldVector& advecting, double mass_coef, double convection_coef,
                               double diffusion_coef) const;

  /// Pack velocity load into a coupled right-hand side (pressure rows zero).
  Eigen::VectorXd saddle_rhs(const Eigen::VectorXd& velocity_load) const;
  Eigen::VectorXd velocity_part(const Eigen::VectorXd& saddle_solution) const;
  /// Pressure coefficients shifted so that (1, p) = 0.
  Eigen::VectorXd pressure_part(const Eigen::VectorXd& saddle_solution) const;

  /// sqrt(v^T M v) for velocity and temperature coefficient vectors.
  double velocity_l2(const Eigen::VectorXd& u) const;
  double temperature_l2(const Eigen::VectorXd& t) const;
  /// v^T K v = ||grad v||^2 for a velocity coefficient vector.
  double velocity_h1_seminorm_squared(const Eigen::VectorXd& u) const;

 private:
  CsrMatrix scalar_operator(const FieldVector& advecting, double mass_coef, double convection_coef,
                            double diffusion_coef) const;

  std::shared_ptr<const Mesh> mesh_;
  TemperatureBoundary temperature_bc_;
  FeSpace velocity_;
  FeSpace pressure_;
  FeSpace temperature_;
  FeSpace scalar_p2_;
  CsrMatrix mass_;
  CsrMatrix stiffness_;
  CsrMatrix velocity_mass_;
  CsrMatrix velocity_stiffness_;
  CsrMatrix divergence_;
  Eigen::VectorXd pressure_weights_;

  int pinned_pressure_ = 0;
  // Coupled-system template: B, B^T and the pin entry filled, velocity
  // blocks zero. Index maps place scalar-pattern entries into the two blocks.
  CsrMatrix saddle_template_;
  std::vector<int> block_map_[2];
  std::vector<int> velocity_dirichlet_;
  std::vector<int> temperature_dirichlet_;
};

}  // namespace ensnc
