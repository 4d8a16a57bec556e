#include "driftlab/sparse.hpp"

#include <cmath>
#include <string>

#include "driftlab/error.hpp"

namespace driftlab {

SparseMatrix::SparseMatrix(Index rows, Index cols) : cols_(cols) {
  if (rows < 0 || cols < 0) throw ParameterError("SparseMatrix: negative dimension");
  row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
}

SparseMatrix SparseMatrix::from_rows(Index cols, const std::vector<std::vector<Entry>>& rows) {
  SparseMatrix m(0, cols);
  for (const auto& r : rows) m.push_row(r);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& dense) {
  SparseMatrix m(0, dense.cols());
  std::vector<Entry> row;
  for (Index r = 0; r < dense.rows(); ++r) {
    row.clear();
    for (Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != 0.0) row.emplace_back(c, dense(r, c));
    }
    m.push_row(row);
  }
  return m;
}

void SparseMatrix::push_row(const std::vector<Entry>& entries) {
  Index previous = -1;
  for (const auto& [col, value] : entries) {
    if (col <= previous || col >= cols_) {
      throw ParameterError("SparseMatrix: column indices must be strictly increasing and < " +
                           std::to_string(cols_));
    }
    if (!std::isfinite(value)) throw DataError("SparseMatrix: non-finite value");
    previous = col;
    col_idx_.push_back(col);
    values_.push_back(value);
  }
  row_ptr_.push_back(values_.size());
}

Matrix SparseMatrix::multiply(const Matrix& rhs) const {
  if (rhs.rows() != cols_) throw ParameterError("SparseMatrix::multiply: shape mismatch");
  Matrix out = Matrix::Zero(rows(), rhs.cols());
  for (Index r = 0; r < rows(); ++r) {
    for (std::size_t p = row_begin(r); p < row_end(r); ++p) {
      out.row(r).noalias() += values_[p] * rhs.row(col_idx_[p]);
    }
  }
  return out;
}

Matrix SparseMatrix::multiply_transposed(const Matrix& rhs) const {
  if (rhs.rows() != rows()) {
    throw ParameterError("SparseMatrix::multiply_transposed: shape mismatch");
  }
  Matrix out = Matrix::Zero(cols_, rhs.cols());
  for (Index r = 0; r < rows(); ++r) {
    for (std::size_t p = row_begin(r); p < row_end(r); ++p) {
      out.row(col_idx_[p]).noalias() += values_[p] * rhs.row(r);
    }
  }
  return out;
}

Matrix SparseMatrix::to_dense() const {
  Matrix out = Matrix::Zero(rows(), cols_);
  for (Index r = 0; r < rows(); ++r) {
    for (std::size_t p = row_begin(r); p < row_end(r); ++p) out(r, col_idx_[p]) = values_[p];
  }
  return out;
}

double SparseMatrix::row_norm(Index r) const {
  double sum = 0.0;
  for (std::size_t p = row_begin(r); p < row_end(r); ++p) sum += values_[p] * values_[p];
  return std::sqrt(sum);
}

}  // namespace driftlab
