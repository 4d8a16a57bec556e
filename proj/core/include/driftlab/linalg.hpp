#pragma once

#include <cstdint>
#include <utility>

#include "driftlab/matrix.hpp"
#include "driftlab/sparse.hpp"

namespace driftlab {

/// Top-k singular triplets: A ~= U * diag(singular_values) * V^T.
struct SvdResult {
  Matrix U;                // n x k, orthonormal columns
  Vector singular_values;  // k, non-increasing, >= 0
  Matrix V;                // d x k, orthonormal columns
};

/// Randomized range finder with subspace (power) iteration.
///
/// The sketch width is min(k + oversample, min(rows, cols)). At least
/// `min_power_iters` power iterations always run; further iterations run until
/// every one of the top-k Ritz values moves by less than `tolerance` (relative)
/// between two iterations, or `max_power_iters` is reached. Flat spectra need
/// more than the minimum to reach full precision.
struct SvdOptions {
  Index oversample = 10;
  int min_power_iters = 2;
  int max_power_iters = 100;
  double tolerance = 1e-12;
};

SvdResult svd_truncated(const Matrix& a, Index k, std::uint64_t seed, const SvdOptions& options = {});
SvdResult svd_truncated(const SparseMatrix& a, Index k, std::uint64_t seed,
                        const SvdOptions& options = {});

/// Subtracts per-column means. Throws ParameterError on an empty matrix.
std::pair<Matrix, Vector> center_columns(const Matrix& a);

/// Squared Euclidean distances between every row of x and every row of y,
/// computed blockwise via |x|^2 + |y|^2 - 2 x.y with negatives clamped to 0.
Matrix pairwise_sq_dists(const Matrix& x, const Matrix& y);

/// Rows processed per block in pairwise_sq_dists.
inline constexpr Index kDistanceBlockRows = 512;

}  // namespace driftlab
