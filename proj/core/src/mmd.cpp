#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "driftlab/detect.hpp"
#include "driftlab/error.hpp"
#include "driftlab/linalg.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

namespace {

// Independent seed streams derived from the caller's seed.
constexpr std::uint64_t kPermutationStream = 1;
constexpr std::uint64_t kSubsampleStream = 2;

void require_mmd_shapes(const Matrix& x, const Matrix& y, const char* what) {
  if (x.rows() < 2 || y.rows() < 2) {
    throw ParameterError(std::string(what) + ": each sample needs at least 2 rows (got " +
                         std::to_string(x.rows()) + " and " + std::to_string(y.rows()) + ")");
  }
  if (x.cols() != y.cols()) {
    throw ParameterError(std::string(what) + ": column mismatch (" + std::to_string(x.cols()) +
                         " vs " + std::to_string(y.cols()) + ")");
  }
  require_finite(x, what);
  require_finite(y, what);
}

Matrix stack_rows(const Matrix& x, const Matrix& y) {
  Matrix pooled(x.rows() + y.rows(), x.cols());
  pooled.topRows(x.rows()) = x;
  pooled.bottomRows(y.rows()) = y;
  return pooled;
}

Matrix take_rows(const Matrix& m, const std::vector<std::size_t>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = m.row(static_cast<Index>(rows[i]));
  }
  return out;
}

// Gram matrix of a pooled sample with the bookkeeping needed to evaluate the
// unbiased MMD^2 of any size-preserving split from one group's index set.
//
// For a group g with complement h:
//   S_g = sum_{i != j in g} K_ij,  R_g = sum_{i in g} rowsum_offdiag(i)
//   cross C = R_g - S_g,  S_h = T - S_g - 2C  (T = total off-diagonal sum)
class PooledGram {
 public:
  PooledGram(const Matrix& pooled, double sigma)
      : gram_(gaussian_kernel_matrix(pairwise_sq_dists(pooled, pooled), sigma)),
        rowsum_(static_cast<std::size_t>(gram_.rows())) {
    for (Index i = 0; i < gram_.rows(); ++i) {
      const double r = gram_.row(i).sum() - gram_(i, i);
      rowsum_[static_cast<std::size_t>(i)] = r;
      total_ += r;
    }
  }

  Index size() const { return gram_.rows(); }

  // `group` must be sorted ascending. The estimate is symmetric in the two
  // sides, so it does not matter which one the group represents.
  double statistic(const std::vector<Index>& group) const {
    const auto s = static_cast<double>(group.size());
    const auto t = static_cast<double>(size()) - s;
    double within_g = 0.0;
    double rows_g = 0.0;
    for (std::size_t a = 0; a < group.size(); ++a) {
      const double* row = gram_.data() + group[a] * gram_.cols();
      double acc = 0.0;
      for (std::size_t b = a + 1; b < group.size(); ++b) acc += row[group[b]];
      within_g += acc;
      rows_g += rowsum_[static_cast<std::size_t>(group[a])];
    }
    within_g *= 2.0;
    const double cross = rows_g - within_g;
    const double within_h = total_ - within_g - 2.0 * cross;

    const double mean_g = within_g / (s * (s - 1.0));
    const double mean_h = within_h / (t * (t - 1.0));
    const double mean_cross = cross / (s * t);
    return mean_g + mean_h - 2.0 * mean_cross;
  }

 private:
  Matrix gram_;
  std::vector<double> rowsum_;
  double total_ = 0.0;
};

std::vector<Index> leading_group(Index n_x, Index n_y) {
  // The smaller side is enumerated; pooled rows are [x..., y...].
  std::vector<Index> group;
  if (n_x <= n_y) {
    for (Index i = 0; i < n_x; ++i) group.push_back(i);
  } else {
    for (Index i = 0; i < n_y; ++i) group.push_back(n_x + i);
  }
  return group;
}

}  // namespace

Matrix gaussian_kernel_matrix(const Matrix& sqdists, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("gaussian kernel: sigma must be positive and finite");
  }
  if (sqdists.size() > 0 && !(sqdists.minCoeff() >= 0.0)) {
    throw ParameterError("gaussian kernel: squared distances must be non-negative");
  }
  const double scale = -1.0 / (2.0 * sigma * sigma);
  return (sqdists.array() * scale).exp().matrix();
}

double median_heuristic_sigma(const Matrix& pooled, std::uint64_t seed) {
  if (pooled.rows() < 2) {
    throw DegenerateDataError("median heuristic: need at least 2 rows");
  }
  std::vector<std::size_t> rows;
  if (pooled.rows() > kMedianHeuristicMaxRows) {
    Rng rng(seed);
    rows = rng.sample_without_replacement(static_cast<std::size_t>(pooled.rows()),
                                          static_cast<std::size_t>(kMedianHeuristicMaxRows));
    std::sort(rows.begin(), rows.end());
  } else {
    rows.resize(static_cast<std::size_t>(pooled.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  }

  std::vector<double> distances;
  distances.reserve(rows.size() * (rows.size() - 1) / 2);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const auto ra = pooled.row(static_cast<Index>(rows[a]));
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const double d = (ra - pooled.row(static_cast<Index>(rows[b]))).norm();
      if (d > 0.0) distances.push_back(d);
    }
  }
  if (distances.empty()) {
    throw DegenerateDataError("median heuristic: no variation (all rows identical)");
  }
  const std::size_t mid = distances.size() / 2;
  std::nth_element(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(mid),
                   distances.end());
  const double upper = distances[mid];
  if (distances.size() % 2 == 1) return upper;
  const double lower = *std::max_element(distances.begin(),
                                         distances.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double resolve_sigma(const KernelSpec& kernel, const Matrix& pooled) {
  if (kernel.sigma) {
    if (!(*kernel.sigma > 0.0) || !std::isfinite(*kernel.sigma)) {
      throw ParameterError("kernel sigma must be positive and finite");
    }
    return *kernel.sigma;
  }
  return median_heuristic_sigma(pooled, kernel.heuristic_seed);
}

double mmd_unbiased(const Matrix& x, const Matrix& y, const KernelSpec& kernel) {
  require_mmd_shapes(x, y, "mmd_unbiased");
  const Matrix pooled = stack_rows(x, y);
  const PooledGram gram(pooled, resolve_sigma(kernel, pooled));
  return gram.statistic(leading_group(x.rows(), y.rows()));
}

MmdResult mmd_permutation_test(const Matrix& reference, const Matrix& current,
                               const MmdOptions& options, std::uint64_t seed,
                               const SignificanceConfig& cfg) {
  cfg.validate();
  if (options.permutations == 0) {
    throw ParameterError("mmd_permutation_test: permutation count must be at least 1");
  }
  require_mmd_shapes(reference, current, "mmd_permutation_test");

  MmdResult result;
  result.permutations = options.permutations;

  Matrix x_sub;
  Matrix y_sub;
  const Matrix* x = &reference;
  const Matrix* y = &current;
  if (options.subsample_threshold > 0 &&
      reference.rows() + current.rows() > options.subsample_threshold) {
    if (options.max_rows_per_sample < 2) {
      throw ParameterError("mmd_permutation_test: max_rows_per_sample must be at least 2");
    }
    auto shrink = [&](const Matrix& m, std::uint64_t stream, Matrix& out) -> const Matrix* {
      if (m.rows() <= options.max_rows_per_sample) return &m;
      Rng rng(derive_seed(seed, kSubsampleStream, stream));
      auto rows = rng.sample_without_replacement(static_cast<std::size_t>(m.rows()),
                                                 static_cast<std::size_t>(options.max_rows_per_sample));
      std::sort(rows.begin(), rows.end());
      out = take_rows(m, rows);
      result.subsampled = true;
      return &out;
    };
    x = shrink(reference, 0, x_sub);
    y = shrink(current, 1, y_sub);
  }
  result.reference_rows_used = x->rows();
  result.current_rows_used = y->rows();

  const Matrix pooled = stack_rows(*x, *y);
  result.sigma_used = resolve_sigma(options.kernel, pooled);
  const PooledGram gram(pooled, result.sigma_used);

  const std::vector<Index> observed_group = leading_group(x->rows(), y->rows());
  result.statistic = gram.statistic(observed_group);

  const auto pooled_rows = static_cast<std::size_t>(gram.size());
  const std::size_t group_size = observed_group.size();
  std::vector<Index> group(group_size);
  std::size_t at_least_as_extreme = 0;
  for (std::size_t b = 0; b < options.permutations; ++b) {
    Rng rng(derive_seed(seed, kPermutationStream, b));
    const auto picked = rng.sample_without_replacement(pooled_rows, group_size);
    for (std::size_t i = 0; i < group_size; ++i) group[i] = static_cast<Index>(picked[i]);
    std::sort(group.begin(), group.end());
    if (gram.statistic(group) >= result.statistic) ++at_least_as_extreme;
  }
  result.p_value = static_cast<double>(1 + at_least_as_extreme) /
                   static_cast<double>(1 + options.permutations);
  result.drift_detected = result.p_value <= cfg.alpha;
  return result;
}

}  // namespace driftlab
