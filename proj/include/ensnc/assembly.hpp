#pragma once

#include <Eigen/Dense>
#include <array>

#include "ensnc/fe_space.hpp"
#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

/// Every volume integral below uses the degree-6 triangle rule, which is exact
/// for the polynomial integrands of P2 mass, stiffness, divergence and the
/// trilinear convection form (degree 5).
inline constexpr int kAssemblyDegree = 6;

/// M_ij = (phi_j, phi_i). VectorP2 spaces get the component-wise block diagonal.
CsrMatrix assemble_mass(const FeSpace& space);

/// K_ij = coefficient * (grad phi_j, grad phi_i). Throws for coefficient <= 0.
CsrMatrix assemble_stiffness(const FeSpace& space, double coefficient);

/// B_ij = (psi_i, div phi_j) with psi the P1 pressure basis and phi the
/// VectorP2 velocity basis; shape pressure.dof_count() x velocity.dof_count().
CsrMatrix assemble_divergence(const FeSpace& velocity, const FeSpace& pressure);

/// Convection operator of the trilinear form
///   b(w, z, v) = (w . grad z, v) + 1/2 ((div w) z, v),
/// N_ij = b(w, phi_j, phi_i), on the pattern of `target` (ScalarP2 or VectorP2).
/// For any w vanishing on the boundary this equals the explicitly
/// skew-symmetric form 1/2 (w . grad z, v) - 1/2 (w . grad v, z), so
/// v^T N v = 0 up to rounding.
CsrMatrix assemble_convection_matrix(const FeSpace& velocity, const FieldVector& advecting,
                                     const FeSpace& target);

/// r_i = b(w, z, phi_i) with the same quadrature as assemble_convection_matrix.
Eigen::VectorXd apply_convection(const FeSpace& velocity, const FieldVector& advecting,
                                 const FeSpace& target, const FieldVector& transported);

/// r_(c,i) = pr * ra * xi_c * (T, phi_i): the Boussinesq body force tested
/// against VectorP2 basis functions.
Eigen::VectorXd assemble_buoyancy(const FeSpace& temperature, const FieldVector& temperature_field,
                                  const FeSpace& velocity, double pr, double ra,
                                  std::array<double, 2> xi);

/// (f, phi_i) for a scalar or vector source.
Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f);
Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFunction& f);

/// w_i = (1, psi_i); the zero-mean pressure constraint is w . p = 0.
Eigen::VectorXd integral_weights(const FeSpace& space);

/// Copies a scalar operator into each diagonal block of a vector operator.
CsrMatrix block_diagonal(const CsrMatrix& scalar, int copies);

}  // namespace ensnc
