#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <span>
#include <vector>

namespace ensnc {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix.
///
/// Invariants: row_offsets has rows+1 monotone entries ending at nnz, and the
/// column indices of each row are strictly increasing. Matrices assembled on
/// the same finite element space share a pattern, so linear combinations can
/// be formed directly on the value arrays.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Validates the invariants; throws std::invalid_argument on violation.
  CsrMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> col_indices,
            std::vector<double> values);

  /// Duplicate entries are summed. Explicit zeros are kept as structural entries.
  static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  static CsrMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Position of (r, c) in the value array, or -1 if not stored.
  int find(int r, int c) const;
  double coeff(int r, int c) const;
  /// Adds to an existing structural entry; throws std::out_of_range otherwise.
  void add_to(int r, int c, double v);

  bool same_pattern(const CsrMatrix& other) const;
  void set_zero();
  void scale(double a);
  /// this += a * other; both must share a pattern.
  void add_scaled(double a, const CsrMatrix& other);

  /// Replaces each listed row by the corresponding identity row.
  void replace_rows_with_identity(std::span<const int> rows);

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  CsrMatrix transpose() const;
  double max_abs() const;

  Eigen::MatrixXd to_dense() const;
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> to_eigen() const;

  void write_matrix_market(std::ostream& out) const;

  friend bool operator==(const CsrMatrix& a, const CsrMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

/// Bitwise comparison of shape, pattern and values.
bool operator==(const CsrMatrix& a, const CsrMatrix& b);

}  // namespace ensnc
