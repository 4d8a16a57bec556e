#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "driftlab/detect.hpp"
#include "driftlab/error.hpp"

namespace driftlab {

namespace {

constexpr double kSeriesTolerance = 1e-12;

// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Dual (theta-function) form of the same distribution; the alternating
    // series converges too slowly here.
    const double factor = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(factor * odd * odd);
      cdf += term;
      if (term < kSeriesTolerance * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return 1.0 - cdf;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term <= kSeriesTolerance * std::abs(sum)) break;
    sign = -sign;
  }
  return 2.0 * sum;
}

}  // namespace

double ks_asymptotic_p_value(double statistic, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw ParameterError("ks_asymptotic_p_value: empty sample");
  const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
  const double root = std::sqrt(ne);
  const double lambda = (root + 0.12 + 0.11 / root) * statistic;
  const double p = kolmogorov_survival(lambda);
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

KsStatistic ks_two_sample_1d(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw ParameterError("ks_two_sample_1d: empty sample");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  for (double v : xs) {
    if (!std::isfinite(v)) throw DataError("ks_two_sample_1d: non-finite value");
  }
  for (double v : ys) {
    if (!std::isfinite(v)) throw DataError("ks_two_sample_1d: non-finite value");
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  // |F_x - F_y| scaled by n*m, kept integral so ties and equal gaps compare exactly.
  const auto n = static_cast<std::int64_t>(xs.size());
  const auto m = static_cast<std::int64_t>(ys.size());
  std::int64_t best = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= v) ++i;
    while (j < ys.size() && ys[j] <= v) ++j;
    const std::int64_t gap = static_cast<std::int64_t>(i) * m - static_cast<std::int64_t>(j) * n;
    best = std::max(best, gap < 0 ? -gap : gap);
  }

  KsStatistic out;
  out.statistic = static_cast<double>(best) / (static_cast<double>(n) * static_cast<double>(m));
  out.p_value = ks_asymptotic_p_value(out.statistic, xs.size(), ys.size());
  return out;
}

KsResult ks_multivariate(const Matrix& reference, const Matrix& current,
                         const SignificanceConfig& cfg) {
  cfg.validate();
  if (reference.cols() != current.cols()) {
    throw ParameterError("ks_multivariate: column mismatch (" + std::to_string(reference.cols()) +
                         " vs " + std::to_string(current.cols()) + ")");
  }
  if (reference.cols() < 1) throw ParameterError("ks_multivariate: zero-width input");

  const Index dims = reference.cols();
  KsResult result;
  result.dims = dims;
  result.alpha = cfg.alpha;
  result.per_dim_statistic.reserve(static_cast<std::size_t>(dims));
  result.per_dim_p.reserve(static_cast<std::size_t>(dims));

  std::vector<double> xcol(static_cast<std::size_t>(reference.rows()));
  std::vector<double> ycol(static_cast<std::size_t>(current.rows()));
  double min_p = 1.0;
  for (Index c = 0; c < dims; ++c) {
    for (Index r = 0; r < reference.rows(); ++r) xcol[static_cast<std::size_t>(r)] = reference(r, c);
    for (Index r = 0; r < current.rows(); ++r) ycol[static_cast<std::size_t>(r)] = current(r, c);
    const KsStatistic ks = ks_two_sample_1d(xcol, ycol);
    result.per_dim_statistic.push_back(ks.statistic);
    result.per_dim_p.push_back(ks.p_value);
    result.overall_statistic = std::max(result.overall_statistic, ks.statistic);
    min_p = std::min(min_p, ks.p_value);
  }
  result.adjusted_p = std::min(1.0, static_cast<double>(dims) * min_p);
  result.drift_detected = result.adjusted_p <= cfg.alpha;
  return result;
}

}  // namespace driftlab
