#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "driftlab/matrix.hpp"

namespace driftlab {

/// Compressed-row sparse matrix. Column indices are strictly increasing
/// within each row and every stored value is finite.
class SparseMatrix {
 public:
  using Entry = std::pair<Index, double>;

  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  /// Builds from per-row entry lists; each list must already be sorted by column
  /// with no duplicates. Throws ParameterError / DataError on violation.
  static SparseMatrix from_rows(Index cols, const std::vector<std::vector<Entry>>& rows);
  static SparseMatrix from_dense(const Matrix& dense);

  /// Appends one row. Same ordering/finiteness rules as from_rows.
  void push_row(const std::vector<Entry>& entries);

  Index rows() const noexcept { return static_cast<Index>(row_ptr_.size()) - 1; }
  Index cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// Half-open range [begin, end) into col_indices()/values() for row r.
  std::size_t row_begin(Index r) const { return row_ptr_[static_cast<std::size_t>(r)]; }
  std::size_t row_end(Index r) const { return row_ptr_[static_cast<std::size_t>(r) + 1]; }
  const std::vector<Index>& col_indices() const noexcept { return col_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// this * rhs  (rows x rhs.cols)
  Matrix multiply(const Matrix& rhs) const;
  /// this^T * rhs  (cols x rhs.cols)
  Matrix multiply_transposed(const Matrix& rhs) const;

  Matrix to_dense() const;
  double row_norm(Index r) const;

 private:
  Index cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

}  // namespace driftlab
