#include "ensnc/sparse_lu.hpp"

#include <Eigen/SparseLU>
#include <stdexcept>
#include <string>

#include "ensnc/errors.hpp"

namespace ensnc {

namespace detail {
struct LuStorage {
  Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>> lu;
};
}  // namespace detail

namespace {

long trailing_index(const std::string& message) {
  const auto pos = message.find_last_not_of("0123456789");
  if (pos == std::string::npos || pos + 1 >= message.size()) return -1;
  return std::stol(message.substr(pos + 1));
}

}  // namespace

Factorization factorize(const CsrMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("factorize: matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
  }
  auto storage = std::make_shared<detail::LuStorage>();
  const auto mat = a.to_eigen();
  storage->lu.analyzePattern(mat);
  storage->lu.factorize(mat);
  if (storage->lu.info() != Eigen::Success) {
    const std::string message = storage->lu.lastErrorMessage();
    // Eigen reports the 1-based column of the zero pivot.
    const long column = trailing_index(message);
    throw SingularMatrixError("factorize: singular matrix (" + message + ")",
                              column > 0 ? column - 1 : column);
  }
  Factorization f;
  f.storage_ = std::move(storage);
  f.size_ = a.rows();
  return f;
}

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != size_) {
    throw std::invalid_argument("Factorization::solve: rhs length " + std::to_string(rhs.size()) +
                                " does not match matrix dimension " + std::to_string(size_));
  }
  Eigen::VectorXd x = storage_->lu.solve(rhs);
  return x;
}

std::vector<Eigen::VectorXd> Factorization::solve_multi(std::span<const Eigen::VectorXd> rhs) const {
  for (const auto& b : rhs) {
    if (b.size() != size_) {
      throw std::invalid_argument("Factorization::solve_multi: rhs length " + std::to_string(b.size()) +
                                  " does not match matrix dimension " + std::to_string(size_));
    }
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(rhs.size());
  for (const auto& b : rhs) out.push_back(solve(b));
  return out;
}

DenseFactors Factorization::dense_factors() const {
  const auto& lu = storage_->lu;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(size_, size_);
  Eigen::MatrixXd l_inv = eye;
  lu.matrixL().solveInPlace(l_inv);
  Eigen::MatrixXd u_inv = eye;
  lu.matrixU().solveInPlace(u_inv);
  DenseFactors f;
  f.lower = l_inv.inverse();
  f.upper = u_inv.inverse();
  f.row_permutation = lu.rowsPermutation().toDenseMatrix().cast<double>();
  f.col_permutation = lu.colsPermutation().toDenseMatrix().cast<double>();
  return f;
}

}  // namespace ensnc
