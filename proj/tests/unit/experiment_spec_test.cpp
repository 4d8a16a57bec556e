#include "driftlab/experiment_spec.hpp"

#include <gtest/gtest.h>

#include "driftlab/error.hpp"

namespace driftlab {
namespace {

std::string field_of(std::string_view json) {
  try {
    parse_experiment_spec(json, "/base");
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ExperimentSpecTest, Defaults) {
  const ExperimentSpec s = parse_experiment_spec(R"({"dataset": "train.csv"})", "/base");
  EXPECT_EQ(s.dataset, std::filesystem::path("/base/train.csv"));
  EXPECT_EQ(s.pipeline, PipelineChoice::kTfidfLsa);
  EXPECT_EQ(s.train_size, 15000u);
  EXPECT_EQ(s.test_size, 5000u);
  EXPECT_EQ(s.drift_levels, (std::vector<double>{0.0, 0.10, 0.25, 0.50, 0.75, 1.0}));
  EXPECT_EQ(s.repeats, 5u);
  EXPECT_EQ(s.alpha, 0.05);
  EXPECT_EQ(s.permutations, 200u);
  EXPECT_FALSE(s.sigma.has_value());
  EXPECT_EQ(s.lsa_components, 100);
  EXPECT_EQ(s.max_features, 20000u);
  EXPECT_EQ(s.report_pipeline_id(), "tfidf-lsa");
}

TEST(ExperimentSpecTest, FullTfidfConfig) {
  const ExperimentSpec s = parse_experiment_spec(R"({
    "dataset": "/data/train.csv",
    "pipeline": {"kind": "tfidf-lsa", "name": "lsa50", "components": 50, "max_features": 5000},
    "train_size": 3000, "test_size": 1000, "drift_levels": [0, 0.5, 1], "repeats": 2, "seed": 42,
    "detectors": {"alpha": 0.01, "permutations": 99, "sigma": 1.5,
                  "mmd_subsample_threshold": 0, "mmd_max_rows": 500}
  })");
  EXPECT_EQ(s.dataset, std::filesystem::path("/data/train.csv"));
  EXPECT_EQ(s.lsa_components, 50);
  EXPECT_EQ(s.max_features, 5000u);
  EXPECT_EQ(s.report_pipeline_id(), "lsa50");
  EXPECT_EQ(s.drift_levels.size(), 3u);
  EXPECT_EQ(s.master_seed, 42u);
  EXPECT_EQ(s.alpha, 0.01);
  EXPECT_EQ(s.permutations, 99u);
  EXPECT_EQ(s.sigma, 1.5);
  EXPECT_EQ(s.mmd_subsample_threshold, 0);
  EXPECT_EQ(s.mmd_max_rows, 500);
}

TEST(ExperimentSpecTest, EmbeddingsConfig) {
  const ExperimentSpec s = parse_experiment_spec(R"({
    "dataset": "d.csv",
    "pipeline": {"kind": "embeddings", "reference": "ref.dlem", "current": "cur.dlem", "pca_components": 50},
    "detectors": {"sigma": "median"}
  })", "/b");
  EXPECT_EQ(s.pipeline, PipelineChoice::kEmbeddings);
  EXPECT_EQ(s.reference_embeddings, std::filesystem::path("/b/ref.dlem"));
  EXPECT_EQ(s.current_embeddings, std::filesystem::path("/b/cur.dlem"));
  EXPECT_EQ(s.pca_components, 50);
  EXPECT_FALSE(s.sigma.has_value());
  EXPECT_EQ(s.report_pipeline_id(), "embeddings-pca");
}

TEST(ExperimentSpecTest, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"dataset": "d", "repeats": 0})"), "repeats");
  EXPECT_EQ(field_of(R"({"dataset": "d", "repeats": -1})"), "repeats");
  EXPECT_EQ(field_of(R"({"dataset": "d", "repeats": "5"})"), "repeats");
  EXPECT_EQ(field_of(R"({"repeats": 1})"), "dataset");
  EXPECT_EQ(field_of(R"({"dataset": "d", "bogus": 1})"), "bogus");
  EXPECT_EQ(field_of(R"({"dataset": "d", "detectors": {"alpah": 0.1}})"), "detectors.alpah");
  EXPECT_EQ(field_of(R"({"dataset": "d", "detectors": {"alpha": 1.5}})"), "detectors.alpha");
  EXPECT_EQ(field_of(R"({"dataset": "d", "detectors": {"sigma": -1}})"), "detectors.sigma");
  EXPECT_EQ(field_of(R"({"dataset": "d", "drift_levels": [0.5, 0.1]})"), "drift_levels[1]");
  EXPECT_EQ(field_of(R"({"dataset": "d", "drift_levels": [1.5]})"), "drift_levels[0]");
  EXPECT_EQ(field_of(R"({"dataset": "d", "pipeline": {"kind": "bert"}})"), "pipeline.kind");
  EXPECT_EQ(field_of(R"({"dataset": "d", "pipeline": {"kind": "embeddings"}})"), "pipeline.reference");
  EXPECT_EQ(field_of(R"({"dataset": "d", "pipeline": {"reference": "x"}})"), "pipeline.reference");
  EXPECT_EQ(field_of(R"({"dataset": "d", "pipeline": {"components": 0}})"), "pipeline.components");
  EXPECT_EQ(field_of("{not json"), "$");
  EXPECT_EQ(field_of("[1]"), "$");
}

TEST(ExperimentSpecTest, MissingFile) {
  try {
    load_experiment_spec("/nonexistent/spec.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "$");
  }
}

}  // namespace
}  // namespace driftlab
