#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "driftlab/detect.hpp"
#include "driftlab/error.hpp"
#include "driftlab/rng.hpp"
#include "support/oracles.hpp"
#include "support/random_matrix.hpp"

namespace driftlab {
namespace {

using Values = std::vector<double>;

TEST(Ks1dTest, IdenticalSamples) {
  const Values x{3.0, 1.0, 2.0, 2.0};
  const KsStatistic r = ks_two_sample_1d(x, Values{2.0, 3.0, 2.0, 1.0});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Ks1dTest, SeparatedPairs) {
  const Values x{1, 2}, y{3, 4};
  EXPECT_EQ(ks_two_sample_1d(x, y).statistic, 1.0);
  EXPECT_EQ(oracle::ks_statistic_enumeration(x, y).second, 1.0);
  EXPECT_NEAR(oracle::ks_exact_permutation_p(x, y), 1.0 / 3.0, 1e-15);
}

TEST(Ks1dTest, DisjointLargeSamples) {
  Values x(1000), y(1000);
  std::iota(x.begin(), x.end(), 0.0);
  std::iota(y.begin(), y.end(), 1000.0);
  const KsStatistic r = ks_two_sample_1d(x, y);
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_LT(r.p_value, 1e-10);
  EXPECT_GT(r.p_value, 0.0);
}

TEST(Ks1dTest, TiesAcrossSamples) {
  // Right-continuous ECDFs: at 1, F_x = 2/3 and F_y = 1/3.
  const KsStatistic r = ks_two_sample_1d(Values{1, 1, 2}, Values{1, 2, 2});
  EXPECT_NEAR(r.statistic, 1.0 / 3.0, 1e-15);
}

TEST(Ks1dTest, MatchesEnumerationOracleOnSmallSamples) {
  Rng rng(2024);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (int trial = 0; trial < 5; ++trial) {
        Values x(n), y(m);
        for (auto& v : x) v = static_cast<double>(rng.below(5));
        for (auto& v : y) v = static_cast<double>(rng.below(5));
        EXPECT_EQ(ks_two_sample_1d(x, y).statistic, oracle::ks_statistic_enumeration(x, y).second);
      }
    }
  }
}

TEST(Ks1dTest, EmptySampleRejected) {
  EXPECT_THROW(ks_two_sample_1d(Values{}, Values{1.0}), ParameterError);
  EXPECT_THROW(ks_two_sample_1d(Values{1.0}, Values{}), ParameterError);
}

TEST(Ks1dTest, NonFiniteRejected) {
  EXPECT_THROW(ks_two_sample_1d(Values{NAN}, Values{1.0}), DataError);
}

TEST(KsPValueTest, MonotoneDecreasingInStatistic) {
  for (const auto [n, m] : {std::pair<std::size_t, std::size_t>{5, 5}, {100, 50}, {5000, 3000}}) {
    double prev = 2.0;
    for (int i = 0; i <= 1000; ++i) {
      const double p = ks_asymptotic_p_value(i / 1000.0, n, m);
      EXPECT_LE(p, prev);
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
      prev = p;
    }
  }
}

TEST(KsPValueTest, KnownKolmogorovValues) {
  // Q_KS(lambda) reference values: Q(1.0) = 0.26999967, Q(0.5) = 0.96394524.
  const auto lambda_to_d = [](double lambda, std::size_t n) {
    const double ne = n / 2.0;
    return lambda / (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne));
  };
  EXPECT_NEAR(ks_asymptotic_p_value(lambda_to_d(1.0, 400), 400, 400), 0.26999967, 1e-7);
  EXPECT_NEAR(ks_asymptotic_p_value(lambda_to_d(0.5, 400), 400, 400), 0.96394524, 1e-7);
  EXPECT_EQ(ks_asymptotic_p_value(0.0, 10, 10), 1.0);
}

TEST(KsMultivariateTest, SingleDimensionIsUncorrected) {
  const Matrix x = testing::gaussian_matrix(30, 1, 1);
  const Matrix y = testing::gaussian_matrix(40, 1, 2, 0.5);
  const KsResult r = ks_multivariate(x, y);
  const Vector xc = x.col(0), yc = y.col(0);
  const KsStatistic s = ks_two_sample_1d(std::span<const double>(xc.data(), 30),
                                         std::span<const double>(yc.data(), 40));
  EXPECT_EQ(r.adjusted_p, s.p_value);
  EXPECT_EQ(r.overall_statistic, s.statistic);
}

TEST(KsMultivariateTest, IdenticalMatrices) {
  const Matrix x = testing::gaussian_matrix(20, 4, 3);
  const KsResult r = ks_multivariate(x, x);
  for (double d : r.per_dim_statistic) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(r.adjusted_p, 1.0);
  EXPECT_FALSE(r.drift_detected);
}

TEST(KsMultivariateTest, BonferroniThresholdAndCap) {
  const Matrix x = testing::gaussian_matrix(50, 10, 4);
  const Matrix y = testing::gaussian_matrix(50, 10, 5);
  const KsResult r = ks_multivariate(x, y, {0.05});
  EXPECT_EQ(r.dims, 10);
  EXPECT_DOUBLE_EQ(r.adjusted_alpha(), 0.005);
  const double min_p = *std::min_element(r.per_dim_p.begin(), r.per_dim_p.end());
  EXPECT_EQ(r.adjusted_p, std::min(1.0, 10.0 * min_p));
  EXPECT_EQ(r.overall_statistic, *std::max_element(r.per_dim_statistic.begin(), r.per_dim_statistic.end()));
  EXPECT_EQ(r.drift_detected, r.adjusted_p <= 0.05);
}

TEST(KsMultivariateTest, DecisionFlipsAtAlphaBoundary) {
  const Matrix x = testing::gaussian_matrix(40, 3, 6);
  const Matrix y = testing::gaussian_matrix(40, 3, 7, 0.4);
  const KsResult base = ks_multivariate(x, y);
  ASSERT_LT(base.adjusted_p, 1.0);
  EXPECT_TRUE(ks_multivariate(x, y, {base.adjusted_p}).drift_detected);
  EXPECT_FALSE(ks_multivariate(x, y, {std::nextafter(base.adjusted_p, 0.0)}).drift_detected);
}

TEST(KsMultivariateTest, ConstantColumns) {
  Matrix x = Matrix::Constant(5, 2, 3.0), y = Matrix::Constant(6, 2, 3.0);
  y(0, 1) = 4.0;
  const KsResult r = ks_multivariate(x, y);
  EXPECT_EQ(r.per_dim_statistic[0], 0.0);
  EXPECT_NEAR(r.per_dim_statistic[1], 1.0 / 6.0, 1e-15);
}

TEST(KsMultivariateTest, InvariantUnderMonotoneTransformAndRowOrder) {
  const Matrix x = testing::gaussian_matrix(60, 3, 8);
  const Matrix y = testing::gaussian_matrix(45, 3, 9, 0.3);
  const KsResult r = ks_multivariate(x, y);
  const Matrix tx = x.unaryExpr([](double v) { return std::exp(2.0 * v) + 5.0; });
  const Matrix ty = y.unaryExpr([](double v) { return std::exp(2.0 * v) + 5.0; });
  const KsResult rt = ks_multivariate(tx, ty);
  EXPECT_EQ(r.per_dim_statistic, rt.per_dim_statistic);
  const KsResult rr = ks_multivariate(x.colwise().reverse(), y.colwise().reverse());
  EXPECT_EQ(r.per_dim_statistic, rr.per_dim_statistic);
  EXPECT_EQ(r.adjusted_p, rr.adjusted_p);
}

TEST(KsMultivariateTest, Errors) {
  EXPECT_THROW(ks_multivariate(Matrix::Zero(3, 2), Matrix::Zero(3, 3)), ParameterError);
  EXPECT_THROW(ks_multivariate(Matrix::Zero(3, 2), Matrix::Zero(3, 2), {1.0}), ParameterError);
  EXPECT_THROW(ks_multivariate(Matrix::Zero(3, 2), Matrix::Zero(3, 2), {0.0}), ParameterError);
}

}  // namespace
}  // namespace driftlab
