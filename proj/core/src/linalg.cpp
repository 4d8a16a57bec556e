#include "driftlab/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

#include "driftlab/error.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DataError(std::string(what) + ": matrix contains NaN or Inf");
}

namespace {

using ColMatrix = Eigen::MatrixXd;

struct DenseOperator {
  const Matrix& a;
  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
  Matrix apply(const Matrix& m) const { return a * m; }
  Matrix apply_transposed(const Matrix& m) const { return a.transpose() * m; }
};

struct SparseOperator {
  const SparseMatrix& a;
  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
  Matrix apply(const Matrix& m) const { return a.multiply(m); }
  Matrix apply_transposed(const Matrix& m) const { return a.multiply_transposed(m); }
};

Matrix orthonormal_basis(const Matrix& y) {
  Eigen::HouseholderQR<ColMatrix> qr(y);
  ColMatrix q = qr.householderQ() * ColMatrix::Identity(y.rows(), y.cols());
  return q;
}

Vector ritz_values(const Matrix& bt) {
  Eigen::JacobiSVD<ColMatrix> svd(bt);
  return svd.singularValues();
}

bool converged(const Vector& previous, const Vector& current, Index k, double tolerance) {
  const double floor = 1e-14 * current(0);
  for (Index i = 0; i < k; ++i) {
    if (std::abs(current(i) - previous(i)) > tolerance * current(i) + floor) return false;
  }
  return true;
}

template <typename Operator>
SvdResult randomized_svd(const Operator& op, Index k, std::uint64_t seed,
                         const SvdOptions& options) {
  const Index full = std::min(op.rows(), op.cols());
  if (k < 1 || k > full) {
    throw ParameterError("svd_truncated: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(full) + "]");
  }
  if (options.oversample < 0 || options.min_power_iters < 0 ||
      options.max_power_iters < options.min_power_iters) {
    throw ParameterError("svd_truncated: invalid options");
  }
  const Index width = std::min(k + options.oversample, full);

  Rng rng(seed);
  Matrix omega(op.cols(), width);
  for (Index r = 0; r < omega.rows(); ++r) {
    for (Index c = 0; c < width; ++c) omega(r, c) = rng.normal();
  }

  Matrix q = orthonormal_basis(op.apply(omega));
  Vector previous;
  for (int iter = 1; iter <= options.max_power_iters; ++iter) {
    q = orthonormal_basis(op.apply(orthonormal_basis(op.apply_transposed(q))));
    if (iter < options.min_power_iters) continue;
    Vector current = ritz_values(op.apply_transposed(q));
    if (width == full) break;  // sketch spans the whole range; nothing left to refine
    if (previous.size() == current.size() && converged(previous, current, k, options.tolerance)) {
      break;
    }
    previous = std::move(current);
  }

  // A ~= Q Q^T A = Q Bt^T with Bt = A^T Q = Ub S Vb^T, so U = Q Vb and V = Ub.
  const ColMatrix bt = op.apply_transposed(q);
  Eigen::JacobiSVD<ColMatrix> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SvdResult result;
  result.singular_values = svd.singularValues().head(k);
  result.V = svd.matrixU().leftCols(k);
  result.U = q * svd.matrixV().leftCols(k);

  // Deterministic sign: the largest-magnitude entry of each right vector is positive.
  for (Index j = 0; j < k; ++j) {
    Index arg = 0;
    result.V.col(j).cwiseAbs().maxCoeff(&arg);
    if (result.V(arg, j) < 0.0) {
      result.V.col(j) *= -1.0;
      result.U.col(j) *= -1.0;
    }
  }
  return result;
}

}  // namespace

SvdResult svd_truncated(const Matrix& a, Index k, std::uint64_t seed, const SvdOptions& options) {
  require_finite(a, "svd_truncated");
  return randomized_svd(DenseOperator{a}, k, seed, options);
}

SvdResult svd_truncated(const SparseMatrix& a, Index k, std::uint64_t seed,
                        const SvdOptions& options) {
  return randomized_svd(SparseOperator{a}, k, seed, options);
}

std::pair<Matrix, Vector> center_columns(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw ParameterError("center_columns: empty matrix");
  Vector means = a.colwise().mean().transpose();
  Matrix centered = a.rowwise() - means.transpose();
  return {std::move(centered), std::move(means)};
}

Matrix pairwise_sq_dists(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.cols()) {
    throw ParameterError("pairwise_sq_dists: column mismatch (" + std::to_string(x.cols()) +
                         " vs " + std::to_string(y.cols()) + ")");
  }
  const Vector x_norms = x.rowwise().squaredNorm();
  const Vector y_norms = y.rowwise().squaredNorm();
  Matrix out(x.rows(), y.rows());
  for (Index begin = 0; begin < x.rows(); begin += kDistanceBlockRows) {
    const Index len = std::min(kDistanceBlockRows, x.rows() - begin);
    auto block = out.middleRows(begin, len);
    block.noalias() = -2.0 * x.middleRows(begin, len) * y.transpose();
    for (Index i = 0; i < len; ++i) {
      for (Index j = 0; j < y.rows(); ++j) {
        block(i, j) = std::max(0.0, block(i, j) + x_norms(begin + i) + y_norms(j));
      }
    }
  }
  return out;
}

}  // namespace driftlab
