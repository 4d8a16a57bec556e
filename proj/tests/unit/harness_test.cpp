#include "driftlab/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "driftlab/error.hpp"
#include "support/random_matrix.hpp"
#include "support/synthetic_news.hpp"

namespace driftlab {
namespace {

const Dataset& corpus() {
  static const Dataset d = [] {
    testing::SyntheticNewsOptions o;
    o.per_category = 400;
    return parse_agnews_csv(testing::synthetic_news_csv(o));
  }();
  return d;
}

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.dataset = "synthetic.csv";
  s.train_size = 300;
  s.test_size = 150;
  s.repeats = 2;
  s.drift_levels = {0.0, 0.5, 1.0};
  s.lsa_components = 10;
  s.max_features = 2000;
  s.permutations = 50;
  s.master_seed = 11;
  return s;
}

TEST(SplitTest, PartitionsAndExcludesSports) {
  const Dataset& d = corpus();
  const SplitSet s = build_splits(d, 500, 3);
  EXPECT_EQ(s.train.size(), 500u);
  EXPECT_EQ(s.pool_nonsports.size(), 1200u - 500u);
  EXPECT_EQ(s.pool_sports.size(), 400u);
  std::set<std::size_t> train(s.train.begin(), s.train.end());
  EXPECT_EQ(train.size(), 500u);
  for (std::size_t i : s.train) EXPECT_NE(d.records[i].label, Category::kSports);
  for (std::size_t i : s.pool_nonsports) {
    EXPECT_FALSE(train.contains(i));
    EXPECT_NE(d.records[i].label, Category::kSports);
  }
  for (std::size_t i : s.pool_sports) EXPECT_EQ(d.records[i].label, Category::kSports);
  EXPECT_TRUE(std::is_sorted(s.pool_nonsports.begin(), s.pool_nonsports.end()));
}

TEST(SplitTest, ZeroTrainAndDeterminism) {
  const SplitSet empty = build_splits(corpus(), 0, 1);
  EXPECT_TRUE(empty.train.empty());
  EXPECT_EQ(empty.pool_nonsports.size(), 1200u);
  EXPECT_EQ(build_splits(corpus(), 100, 5).train, build_splits(corpus(), 100, 5).train);
  EXPECT_NE(build_splits(corpus(), 100, 5).train, build_splits(corpus(), 100, 6).train);
  EXPECT_THROW(build_splits(corpus(), 1201, 1), DataError);
}

TEST(DriftedTestTest, SportsCountRounding) {
  EXPECT_EQ(sports_count(5000, 0.25), 1250u);
  EXPECT_EQ(sports_count(5000, 0.0), 0u);
  EXPECT_EQ(sports_count(5000, 1.0), 5000u);
  EXPECT_EQ(sports_count(10, 0.25), 3u);
  EXPECT_EQ(sports_count(1000, 0.1), 100u);
}

TEST(DriftedTestTest, CompositionAndBoundaries) {
  const Dataset& d = corpus();
  const SplitSet s = build_splits(d, 300, 2);
  for (double rho : {0.0, 0.25, 1.0}) {
    const auto test = make_drifted_test(s, 1000, rho, 9);
    ASSERT_EQ(test.size(), 1000u);
    const auto sports = static_cast<std::size_t>(std::count_if(
        test.begin(), test.end(), [&](std::size_t i) { return d.records[i].label == Category::kSports; }));
    EXPECT_EQ(sports, sports_count(1000, rho));
    std::set<std::size_t> train(s.train.begin(), s.train.end());
    for (std::size_t i : test) EXPECT_FALSE(train.contains(i));
  }
  EXPECT_EQ(make_drifted_test(s, 200, 0.5, 4), make_drifted_test(s, 200, 0.5, 4));
  EXPECT_THROW(make_drifted_test(s, 10, 1.5, 1), ParameterError);
  SplitSet no_sports = s;
  no_sports.pool_sports.clear();
  EXPECT_THROW(make_drifted_test(no_sports, 10, 0.5, 1), DataError);
  EXPECT_NO_THROW(make_drifted_test(no_sports, 10, 0.0, 1));
}

TEST(DriftedTestTest, DrawsWithReplacement) {
  const SplitSet s = build_splits(corpus(), 0, 2);
  const auto test = make_drifted_test(s, 2000, 1.0, 3);
  std::set<std::size_t> distinct(test.begin(), test.end());
  EXPECT_LT(distinct.size(), test.size());
}

TEST(CellSeedTest, DistinctAcrossGrid) {
  std::set<std::uint64_t> seeds;
  for (std::size_t l = 0; l < 6; ++l) {
    for (std::size_t r = 0; r < 5; ++r) seeds.insert(cell_seed(7, l, r));
  }
  EXPECT_EQ(seeds.size(), 30u);
}

TEST(RunExperimentTest, ReportShapeAndDeterminism) {
  const ExperimentSpec spec = small_spec();
  std::vector<std::string> lines;
  const ExperimentResult a = run_experiment(spec, corpus(), nullptr,
                                            [&](const std::string& l) { lines.push_back(l); });
  EXPECT_TRUE(a.failures.empty());
  EXPECT_EQ(lines.size(), 6u);
  ASSERT_EQ(a.report.rows.size(), 6u);
  EXPECT_EQ(a.report.rows[0].detector, "ks");
  EXPECT_EQ(a.report.rows[3].detector, "mmd");
  for (const auto& row : a.report.rows) {
    EXPECT_EQ(row.pipeline, "tfidf-lsa");
    EXPECT_EQ(row.n_repeats, 2u);
    EXPECT_GE(row.mean_p, 0.0);
    EXPECT_LE(row.mean_p, 1.0);
    EXPECT_GE(row.std_p, 0.0);
    EXPECT_EQ(row.significant, row.mean_p <= spec.alpha);
  }
  EXPECT_EQ(a.reference_width, 10);
  for (std::size_t i : a.train_indices) EXPECT_NE(corpus().records[i].label, Category::kSports);
  EXPECT_EQ(a.train_indices, experiment_train_indices(spec, corpus()));

  const ExperimentResult b = run_experiment(spec, corpus(), nullptr);
  EXPECT_EQ(report_to_csv(a.report), report_to_csv(b.report));

  // Full sports test sets are clearly detected by both detectors.
  EXPECT_TRUE(a.report.rows[2].significant);
  EXPECT_TRUE(a.report.rows[5].significant);
  const auto ks = a.mean_ks_statistic();
  ASSERT_EQ(ks.size(), 3u);
  EXPECT_LT(ks[0], ks[2]);
}

TEST(RunExperimentTest, SingleRepeatHasZeroStddev) {
  ExperimentSpec spec = small_spec();
  spec.repeats = 1;
  spec.drift_levels = {0.0, 1.0};
  const ExperimentResult r = run_experiment(spec, corpus(), nullptr);
  for (const auto& row : r.report.rows) EXPECT_EQ(row.std_p, 0.0);
}

TEST(RunExperimentTest, FailedCellsAreRecordedAndRunContinues) {
  ExperimentSpec spec = small_spec();
  spec.repeats = 1;
  spec.drift_levels = {0.0, 1.0};
  spec.train_size = 1200;  // leaves the non-sports pool empty
  const ExperimentResult r = run_experiment(spec, corpus(), nullptr);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].level_index, 0u);
  EXPECT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.report.rows[0].n_repeats, 0u);
  EXPECT_FALSE(r.report.rows[0].significant);
  EXPECT_EQ(r.report.rows[1].n_repeats, 1u);
}

TEST(RunExperimentTest, EmbeddingsPipeline) {
  const Dataset& d = corpus();
  ExperimentSpec spec = small_spec();
  spec.pipeline = PipelineChoice::kEmbeddings;
  spec.reference_embeddings = "ref.dlem";
  spec.current_embeddings = "cur.dlem";
  spec.pca_components = 3;
  spec.repeats = 1;

  // Sports rows are shifted along the first coordinate.
  Matrix all = testing::gaussian_matrix(static_cast<Index>(d.size()), 6, 5);
  std::vector<std::uint8_t> labels;
  for (std::size_t i = 0; i < d.size(); ++i) {
    labels.push_back(static_cast<std::uint8_t>(d.records[i].label));
    if (d.records[i].label == Category::kSports) all(static_cast<Index>(i), 0) += 3.0;
  }
  const auto train = experiment_train_indices(spec, d);
  Matrix ref(static_cast<Index>(train.size()), 6);
  for (std::size_t i = 0; i < train.size(); ++i) ref.row(static_cast<Index>(i)) = all.row(static_cast<Index>(train[i]));

  EmbeddingInputs inputs{{ref, std::nullopt}, {all, labels}};
  const ExperimentResult r = run_experiment(spec, d, &inputs);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.reference_width, 3);
  EXPECT_EQ(r.report.rows[0].pipeline, "embeddings-pca");
  EXPECT_TRUE(r.report.rows[2].significant);
  EXPECT_TRUE(r.report.rows[5].significant);

  EmbeddingInputs short_current{{ref, std::nullopt}, {all.topRows(10), std::nullopt}};
  EXPECT_THROW(run_experiment(spec, d, &short_current), DataError);
  auto bad_labels = labels;
  bad_labels[0] = static_cast<std::uint8_t>(labels[0] == 1 ? 2 : 1);
  EmbeddingInputs mislabeled{{ref, std::nullopt}, {all, bad_labels}};
  EXPECT_THROW(run_experiment(spec, d, &mislabeled), DataError);
  EXPECT_THROW(run_experiment(spec, d, nullptr), ParameterError);
}

TEST(IndicesFileTest, RoundTripAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "driftlab_indices_test.txt";
  const std::vector<std::size_t> idx{5, 0, 17, 3};
  write_indices(idx, path);
  EXPECT_EQ(read_indices(path), idx);
  std::ofstream(path) << "1\nx\n";
  EXPECT_THROW(read_indices(path), DataError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace driftlab
