#pragma once

#include <cstdint>

#include "driftlab/linalg.hpp"
#include "driftlab/matrix.hpp"
#include "driftlab/sparse.hpp"

namespace driftlab {

inline constexpr Index kDefaultLsaComponents = 100;
inline constexpr Index kDefaultPcaComponents = 50;

/// Components whose singular value falls below this fraction of the leading
/// one are zero-filled and excluded from `effective_rank`.
inline constexpr double kRankTolerance = 1e-10;

struct PcaModel {
  Vector means;                // d
  Matrix components;           // d x k, orthonormal columns (zero-filled past effective_rank)
  Vector explained_variance;   // k, non-increasing
  Index effective_rank = 0;

  Index input_width() const { return components.rows(); }
  Index k() const { return components.cols(); }
};

struct LsaModel {
  Matrix components;        // d x k right singular vectors
  Vector singular_values;   // k, non-increasing
  Index effective_rank = 0;

  Index input_width() const { return components.rows(); }
  Index k() const { return components.cols(); }
};

/// Requires n >= 2 and 1 <= k <= min(n - 1, d). explained_variance_i = s_i^2 / (n - 1).
PcaModel fit_pca(const Matrix& x, Index k, std::uint64_t seed, const SvdOptions& svd = {});

/// (x - means) * components, using only fitted statistics.
Matrix transform_pca(const Matrix& x, const PcaModel& model);

/// Top-k right singular vectors of the uncentered input; 1 <= k <= min(n, d).
LsaModel fit_lsa(const SparseMatrix& x, Index k, std::uint64_t seed, const SvdOptions& svd = {});

/// x * components.
Matrix transform_lsa(const SparseMatrix& x, const LsaModel& model);
Matrix transform_lsa(const Matrix& x, const LsaModel& model);

}  // namespace driftlab
