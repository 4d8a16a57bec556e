#include "driftlab/reduce.hpp"

#include <algorithm>
#include <string>

#include "driftlab/error.hpp"

namespace driftlab {

namespace {

// Zero-fills components whose singular value is numerically negligible and
// returns how many survive.
Index truncate_rank(Matrix& components, Vector& singular_values) {
  const double cutoff = singular_values.size() > 0 ? kRankTolerance * singular_values(0) : 0.0;
  Index rank = 0;
  for (Index j = 0; j < singular_values.size(); ++j) {
    if (singular_values(j) > cutoff && singular_values(j) > 0.0) {
      ++rank;
    } else {
      components.col(j).setZero();
      singular_values(j) = 0.0;
    }
  }
  return rank;
}

void require_width(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw ParameterError(std::string(what) + ": input has " + std::to_string(got) +
                         " columns, model expects " + std::to_string(expected));
  }
}

}  // namespace

PcaModel fit_pca(const Matrix& x, Index k, std::uint64_t seed, const SvdOptions& svd) {
  if (x.rows() < 2) throw ParameterError("fit_pca: need at least 2 rows");
  const Index limit = std::min(x.rows() - 1, x.cols());
  if (k < 1 || k > limit) {
    throw ParameterError("fit_pca: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(limit) + "]");
  }
  require_finite(x, "fit_pca");
  auto [centered, means] = center_columns(x);

  PcaModel model;
  model.means = std::move(means);
  if (centered.isZero(0.0)) {
    model.components = Matrix::Zero(x.cols(), k);
    model.explained_variance = Vector::Zero(k);
    return model;
  }
  SvdResult svd_result = svd_truncated(centered, k, seed, svd);
  model.components = std::move(svd_result.V);
  Vector s = std::move(svd_result.singular_values);
  model.effective_rank = truncate_rank(model.components, s);
  model.explained_variance = s.array().square() / static_cast<double>(x.rows() - 1);
  return model;
}

Matrix transform_pca(const Matrix& x, const PcaModel& model) {
  require_width(x.cols(), model.input_width(), "transform_pca");
  return (x.rowwise() - model.means.transpose()) * model.components;
}

LsaModel fit_lsa(const SparseMatrix& x, Index k, std::uint64_t seed, const SvdOptions& svd) {
  const Index limit = std::min(x.rows(), x.cols());
  if (k < 1 || k > limit) {
    throw ParameterError("fit_lsa: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(limit) + "]");
  }
  LsaModel model;
  if (x.nonzeros() == 0) {
    model.components = Matrix::Zero(x.cols(), k);
    model.singular_values = Vector::Zero(k);
    return model;
  }
  SvdResult svd_result = svd_truncated(x, k, seed, svd);
  model.components = std::move(svd_result.V);
  model.singular_values = std::move(svd_result.singular_values);
  model.effective_rank = truncate_rank(model.components, model.singular_values);
  return model;
}

Matrix transform_lsa(const SparseMatrix& x, const LsaModel& model) {
  require_width(x.cols(), model.input_width(), "transform_lsa");
  return x.multiply(model.components);
}

Matrix transform_lsa(const Matrix& x, const LsaModel& model) {
  require_width(x.cols(), model.input_width(), "transform_lsa");
  return x * model.components;
}

}  // namespace driftlab
