#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

namespace detail {
struct LuStorage;
}

/// Dense copies of the factors, P_r * A * P_c = L * U. Test and debugging aid.
struct DenseFactors {
  Eigen::MatrixXd row_permutation;
  Eigen::MatrixXd col_permutation;
  Eigen::MatrixXd lower;
  Eigen::MatrixXd upper;
};

/// Reusable sparse LU factorization of a square matrix.
///
/// Supernodal LU with threshold partial pivoting over a COLAMD column
/// preorder (Eigen::SparseLU). The object is immutable once built and is
/// cheap to copy; concurrent solves against one factorization are safe.
class Factorization {
 public:
  int size() const { return size_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Solves every right-hand side against the same factors. Each column goes
  /// through exactly the same code path as solve(), so results are bitwise
  /// identical to repeated single solves.
  std::vector<Eigen::VectorXd> solve_multi(std::span<const Eigen::VectorXd> rhs) const;

  /// Only sensible for small systems.
  DenseFactors dense_factors() const;

 private:
  friend Factorization factorize(const CsrMatrix& a);
  std::shared_ptr<const detail::LuStorage> storage_;
  int size_ = 0;
};

/// Throws std::invalid_argument for a non-square matrix and
/// SingularMatrixError (with the failing pivot column) on a zero pivot.
Factorization factorize(const CsrMatrix& a);

}  // namespace ensnc
