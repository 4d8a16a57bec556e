#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "driftlab/error.hpp"
#include "driftlab/pipeline.hpp"
#include "support/random_matrix.hpp"

namespace driftlab {
namespace {

namespace fs = std::filesystem;

class ModelIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("driftlab_model_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const std::vector<std::string> kDocs{"stocks fall on wall street", "team wins the final match",
                                     "new chip speeds up phones", "markets rally as stocks rise",
                                     "election results announced today", "phones and chips sell well"};

TEST_F(ModelIoTest, TfidfLsaRoundTripTransformsIdentically) {
  const auto p = FittedPipeline::fit_tfidf_lsa(kDocs, {100, 3}, 5);
  save_pipeline(p, dir_ / "m.dlpm");
  const auto q = load_pipeline(dir_ / "m.dlpm");
  EXPECT_EQ(q.kind(), PipelineKind::kTfidfLsa);
  EXPECT_EQ(q.input_width(), p.input_width());
  EXPECT_EQ(q.output_width(), 3);
  EXPECT_EQ(q.effective_rank(), p.effective_rank());
  EXPECT_EQ(q.vocabulary()->terms(), p.vocabulary()->terms());
  const std::vector<std::string> cur{"stocks and phones", "unknown words only"};
  EXPECT_EQ(q.transform(cur), p.transform(cur));
}

TEST_F(ModelIoTest, PcaRoundTripIsBitwise) {
  const Matrix x = testing::gaussian_matrix(30, 6, 3, 1.5);
  const auto p = FittedPipeline::fit_pca(x, 4, 2);
  save_pipeline(p, dir_ / "p.dlpm");
  const auto q = load_pipeline(dir_ / "p.dlpm");
  EXPECT_EQ(q.kind(), PipelineKind::kPca);
  EXPECT_EQ(q.pca()->means, p.pca()->means);
  EXPECT_EQ(q.pca()->components, p.pca()->components);
  EXPECT_EQ(q.pca()->explained_variance, p.pca()->explained_variance);
  EXPECT_EQ(q.transform(x), p.transform(x));
  EXPECT_THROW(q.transform(kDocs), ParameterError);
}

TEST_F(ModelIoTest, IdentityRoundTrip) {
  save_pipeline(FittedPipeline::identity(7), dir_ / "i.dlpm");
  const auto q = load_pipeline(dir_ / "i.dlpm");
  EXPECT_EQ(q.kind(), PipelineKind::kIdentity);
  EXPECT_EQ(q.output_width(), 7);
  const Matrix x = testing::gaussian_matrix(3, 7, 1);
  EXPECT_EQ(q.transform(x), x);
  EXPECT_THROW(q.transform(Matrix::Zero(2, 6)), ParameterError);
}

TEST_F(ModelIoTest, CorruptFilesAreDataErrors) {
  save_pipeline(FittedPipeline::fit_pca(testing::gaussian_matrix(10, 3, 1), 2, 1), dir_ / "p.dlpm");
  const auto size = fs::file_size(dir_ / "p.dlpm");

  fs::copy_file(dir_ / "p.dlpm", dir_ / "short.dlpm");
  fs::resize_file(dir_ / "short.dlpm", size - 5);
  EXPECT_THROW(load_pipeline(dir_ / "short.dlpm"), DataError);

  fs::copy_file(dir_ / "p.dlpm", dir_ / "long.dlpm");
  std::ofstream(dir_ / "long.dlpm", std::ios::binary | std::ios::app) << 'x';
  EXPECT_THROW(load_pipeline(dir_ / "long.dlpm"), DataError);

  std::ofstream(dir_ / "magic.dlpm", std::ios::binary) << "NOPE0000000000000000000000000000";
  EXPECT_THROW(load_pipeline(dir_ / "magic.dlpm"), DataError);

  EXPECT_THROW(load_pipeline(dir_ / "missing.dlpm"), DataError);
}

TEST(PipelineTest, FitIsDeterministicAndNeverSeesCurrent) {
  const auto a = FittedPipeline::fit_tfidf_lsa(kDocs, {100, 2}, 9);
  const auto b = FittedPipeline::fit_tfidf_lsa(kDocs, {100, 2}, 9);
  EXPECT_EQ(a.lsa()->components, b.lsa()->components);
  const std::vector<std::string> batch{"stocks rise", "team match", "chips"};
  const Matrix all = a.transform(batch);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(a.transform(std::vector<std::string>{batch[i]}).row(0), all.row(static_cast<Index>(i)));
  }
  EXPECT_EQ(to_string(PipelineKind::kTfidfLsa), "tfidf-lsa");
  EXPECT_EQ(to_string(PipelineKind::kPca), "pca");
}

}  // namespace
}  // namespace driftlab
