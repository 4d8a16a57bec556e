#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "driftlab/matrix.hpp"

namespace driftlab {

struct SignificanceConfig {
  double alpha = 0.05;

  /// Throws ParameterError unless 0 < alpha < 1.
  void validate() const;
};

/// Gaussian kernel k(x, y) = exp(-|x - y|^2 / (2 sigma^2)). An empty `sigma`
/// selects the median heuristic on the pooled sample.
struct KernelSpec {
  std::optional<double> sigma;
  /// Seeds the row subsample used by the median heuristic.
  std::uint64_t heuristic_seed = 0;

  static KernelSpec median_heuristic(std::uint64_t seed = 0) { return {std::nullopt, seed}; }
  static KernelSpec fixed(double sigma) { return {sigma, 0}; }
};

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

struct KsStatistic {
  double statistic = 0.0;  // D in [0, 1]
  double p_value = 1.0;    // asymptotic, in (0, 1]
};

struct KsResult {
  std::vector<double> per_dim_statistic;
  std::vector<double> per_dim_p;
  double overall_statistic = 0.0;  // max over dimensions
  double adjusted_p = 1.0;         // min(1, dims * min per-dimension p)
  bool drift_detected = false;     // adjusted_p <= alpha
  Index dims = 0;
  double alpha = 0.05;

  /// Per-dimension threshold alpha / dims.
  double adjusted_alpha() const { return alpha / static_cast<double>(dims); }
};

/// Two-sided two-sample KS test on right-continuous empirical CDFs.
KsStatistic ks_two_sample_1d(std::span<const double> x, std::span<const double> y);

/// Asymptotic Kolmogorov survival probability for statistic D with sample
/// sizes n and m, using the effective size n*m/(n+m) and the
/// (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) small-sample correction.
double ks_asymptotic_p_value(double statistic, std::size_t n, std::size_t m);

/// Per-column KS with Bonferroni aggregation over the columns.
KsResult ks_multivariate(const Matrix& reference, const Matrix& current,
                         const SignificanceConfig& cfg = {});

// ---------------------------------------------------------------------------
// Maximum mean discrepancy

/// Elementwise exp(-sqdist / (2 sigma^2)).
Matrix gaussian_kernel_matrix(const Matrix& sqdists, double sigma);

inline constexpr Index kMedianHeuristicMaxRows = 1000;

/// Median of the nonzero pairwise Euclidean distances among at most
/// kMedianHeuristicMaxRows rows (a seeded subsample when there are more).
/// Throws DegenerateDataError when every distance is zero.
double median_heuristic_sigma(const Matrix& pooled, std::uint64_t seed = 0);

/// Resolves the bandwidth for a pooled sample: the explicit sigma or the heuristic.
double resolve_sigma(const KernelSpec& kernel, const Matrix& pooled);

/// Unbiased MMD^2 estimate (off-diagonal within-sample means minus twice the
/// cross mean). Requires at least two rows on each side.
double mmd_unbiased(const Matrix& x, const Matrix& y, const KernelSpec& kernel);

struct MmdOptions {
  KernelSpec kernel;
  std::size_t permutations = 200;
  /// When reference + current rows exceed this, each side is subsampled
  /// (seeded, without replacement) to at most max_rows_per_sample rows.
  /// Zero disables the guard.
  Index subsample_threshold = 4000;
  Index max_rows_per_sample = 2000;
};

struct MmdResult {
  double statistic = 0.0;
  double p_value = 1.0;  // (1 + #{stat_b >= stat_obs}) / (1 + B)
  std::size_t permutations = 0;
  double sigma_used = 0.0;
  bool drift_detected = false;
  Index reference_rows_used = 0;
  Index current_rows_used = 0;
  bool subsampled = false;
};

/// Permutation test on the pooled Gram matrix. Sigma is resolved once on the
/// pooled sample and held fixed; permutation b draws its relabeling from a
/// generator seeded by (seed, b).
MmdResult mmd_permutation_test(const Matrix& reference, const Matrix& current,
                               const MmdOptions& options, std::uint64_t seed,
                               const SignificanceConfig& cfg = {});

}  // namespace driftlab
