#include "ensnc/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ensnc {

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> col_indices,
                     std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (rows_ < 0 || cols_ < 0) throw std::invalid_argument("CsrMatrix: negative shape");
  if (static_cast<int>(row_offsets_.size()) != rows_ + 1 || row_offsets_.front() != 0) {
    throw std::invalid_argument("CsrMatrix: row_offsets must have rows+1 entries starting at 0");
  }
  if (row_offsets_.back() != static_cast<int>(col_indices_.size()) ||
      col_indices_.size() != values_.size()) {
    throw std::invalid_argument("CsrMatrix: last offset must equal the number of stored values");
  }
  for (int r = 0; r < rows_; ++r) {
    if (row_offsets_[r + 1] < row_offsets_[r]) {
      throw std::invalid_argument("CsrMatrix: row_offsets not monotone at row " + std::to_string(r));
    }
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] < 0 || col_indices_[k] >= cols_) {
        throw std::invalid_argument("CsrMatrix: column index out of range in row " + std::to_string(r));
      }
      if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1]) {
        throw std::invalid_argument("CsrMatrix: column indices not strictly increasing in row " +
                                    std::to_string(r));
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::invalid_argument("CsrMatrix::from_triplets: entry outside the matrix shape");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> offsets(rows + 1, 0);
  std::vector<int> cols_out;
  std::vector<double> vals;
  cols_out.reserve(triplets.size());
  vals.reserve(triplets.size());
  int last_row = -1, last_col = -1;
  for (const auto& t : triplets) {
    if (t.row == last_row && t.col == last_col) {
      vals.back() += t.value;
      continue;
    }
    cols_out.push_back(t.col);
    vals.push_back(t.value);
    ++offsets[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (int r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_ = std::move(offsets);
  m.col_indices_ = std::move(cols_out);
  m.values_ = std::move(vals);
  return m;
}

CsrMatrix CsrMatrix::identity(int n) {
  std::vector<int> offsets(n + 1), cols(n);
  for (int i = 0; i <= n; ++i) offsets[i] = i;
  for (int i = 0; i < n; ++i) cols[i] = i;
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

int CsrMatrix::find(int r, int c) const {
  if (r < 0 || r >= rows_) return -1;
  const auto first = col_indices_.begin() + row_offsets_[r];
  const auto last = col_indices_.begin() + row_offsets_[r + 1];
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return -1;
  return static_cast<int>(it - col_indices_.begin());
}

double CsrMatrix::coeff(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : values_[k];
}

void CsrMatrix::add_to(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) {
    throw std::out_of_range("CsrMatrix::add_to: (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") is not in the pattern");
  }
  values_[k] += v;
}

bool CsrMatrix::same_pattern(const CsrMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && row_offsets_ == other.row_offsets_ &&
         col_indices_ == other.col_indices_;
}

void CsrMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

void CsrMatrix::scale(double a) {
  for (double& v : values_) v *= a;
}

void CsrMatrix::add_scaled(double a, const CsrMatrix& other) {
  if (!same_pattern(other)) {
    throw std::invalid_argument("CsrMatrix::add_scaled: sparsity patterns differ");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * other.values_[k];
}

void CsrMatrix::replace_rows_with_identity(std::span<const int> rows) {
  for (int r : rows) {
    if (r < 0 || r >= rows_) throw std::out_of_range("replace_rows_with_identity: row out of range");
    const int diag = find(r, r);
    if (diag < 0) {
      throw std::invalid_argument("replace_rows_with_identity: row " + std::to_string(r) +
                                  " has no diagonal entry");
    }
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) values_[k] = 0.0;
    values_[diag] = 1.0;
  }
}

Eigen::VectorXd CsrMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw std::invalid_argument("CsrMatrix::multiply: dimension mismatch");
  Eigen::VectorXd y(rows_);
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) s += values_[k] * x[col_indices_[k]];
    y[r] = s;
  }
  return y;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<int> offsets(cols_ + 1, 0);
  for (int c : col_indices_) ++offsets[c + 1];
  for (int c = 0; c < cols_; ++c) offsets[c + 1] += offsets[c];
  std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<int> cols(col_indices_.size());
  std::vector<double> vals(values_.size());
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      const int dst = cursor[col_indices_[k]]++;
      cols[dst] = r;
      vals[dst] = values_[k];
    }
  }
  CsrMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.row_offsets_ = std::move(offsets);
  t.col_indices_ = std::move(cols);
  t.values_ = std::move(vals);
  return t;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) d(r, col_indices_[k]) += values_[k];
  }
  return d;
}

Eigen::SparseMatrix<double, Eigen::ColMajor, int> CsrMatrix::to_eigen() const {
  Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>> view(
      rows_, cols_, nnz(), row_offsets_.data(), col_indices_.data(), values_.data());
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> out = view;
  out.makeCompressed();
  return out;
}

void CsrMatrix::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
  const auto old = out.precision(17);
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      out << r + 1 << ' ' << col_indices_[k] + 1 << ' ' << values_[k] << '\n';
    }
  }
  out.precision(old);
}

bool operator==(const CsrMatrix& a, const CsrMatrix& b) {
  if (!a.same_pattern(b)) return false;
  return a.values_.empty() ||
         std::memcmp(a.values_.data(), b.values_.data(), a.values_.size() * sizeof(double)) == 0;
}

}  // namespace ensnc
