#include "driftlab/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "driftlab/detect.hpp"
#include "driftlab/error.hpp"
#include "driftlab/pipeline.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

namespace {

// Stream ids under the master seed.
constexpr std::uint64_t kSplitStream = 0;
constexpr std::uint64_t kFitStream = 1;
constexpr std::uint64_t kCellStream = 2;
// Stream ids under a cell seed.
constexpr std::uint64_t kTestSetStream = 0;
constexpr std::uint64_t kPermutationStream = 1;
constexpr std::uint64_t kHeuristicStream = 2;

std::string format_line(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::vector<std::string> texts_of(const Dataset& dataset, std::span<const std::size_t> positions) {
  std::vector<std::string> texts;
  texts.reserve(positions.size());
  for (std::size_t pos : positions) texts.push_back(dataset.records[pos].text());
  return texts;
}

Matrix gather_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = m.row(static_cast<Index>(rows[i]));
  }
  return out;
}

void check_embedding_inputs(const ExperimentSpec& spec, const Dataset& dataset,
                            const SplitSet& splits, const EmbeddingInputs& inputs) {
  const Matrix& ref = inputs.reference.vectors;
  const Matrix& cur = inputs.current.vectors;
  if (static_cast<std::size_t>(ref.rows()) != splits.train.size()) {
    throw DataError("reference embeddings have " + std::to_string(ref.rows()) +
                    " rows, expected one per train record (" + std::to_string(splits.train.size()) + ")");
  }
  if (static_cast<std::size_t>(cur.rows()) != dataset.size()) {
    throw DataError("current embeddings have " + std::to_string(cur.rows()) +
                    " rows, expected one per dataset record (" + std::to_string(dataset.size()) + ")");
  }
  if (ref.cols() != cur.cols()) {
    throw DataError("embedding width mismatch: reference " + std::to_string(ref.cols()) +
                    ", current " + std::to_string(cur.cols()));
  }
  if (spec.pca_components > 0 &&
      (spec.pca_components > ref.cols() || spec.pca_components > ref.rows() - 1)) {
    throw DataError("pca_components " + std::to_string(spec.pca_components) +
                    " exceeds what the reference embeddings support");
  }
  auto label_of = [&](std::size_t pos) {
    return static_cast<std::uint8_t>(dataset.records[pos].label);
  };
  if (inputs.current.labels) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if ((*inputs.current.labels)[i] != label_of(i)) {
        throw DataError("current embeddings row " + std::to_string(i) +
                        " label disagrees with the dataset");
      }
    }
  }
  if (inputs.reference.labels) {
    for (std::size_t i = 0; i < splits.train.size(); ++i) {
      if ((*inputs.reference.labels)[i] != label_of(splits.train[i])) {
        throw DataError("reference embeddings row " + std::to_string(i) +
                        " label disagrees with train record " + std::to_string(splits.train[i]) +
                        " (were the embeddings exported for a different split?)");
      }
    }
  }
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? std::nan("") : sum / static_cast<double>(v.size());
}

double population_stddev(const std::vector<double>& v, double mean) {
  if (v.empty()) return std::nan("");
  double sum = 0.0;
  for (double x : v) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / static_cast<double>(v.size()));
}

std::vector<double> per_level_mean(const ExperimentResult& result, std::size_t levels,
                                   double CellResult::*field) {
  std::vector<double> sums(levels, 0.0);
  std::vector<std::size_t> counts(levels, 0);
  for (const auto& cell : result.cells) {
    sums[cell.level_index] += cell.*field;
    ++counts[cell.level_index];
  }
  for (std::size_t i = 0; i < levels; ++i) {
    sums[i] = counts[i] ? sums[i] / static_cast<double>(counts[i]) : std::nan("");
  }
  return sums;
}

std::size_t level_count(const ExperimentResult& result) {
  std::size_t n = 0;
  for (const auto& cell : result.cells) n = std::max(n, cell.level_index + 1);
  for (const auto& f : result.failures) n = std::max(n, f.level_index + 1);
  return n;
}

}  // namespace

SplitSet build_splits(const Dataset& dataset, std::size_t train_size, std::uint64_t seed) {
  std::vector<std::size_t> nonsports;
  SplitSet splits;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.records[i].label == Category::kSports) {
      splits.pool_sports.push_back(i);
    } else {
      nonsports.push_back(i);
    }
  }
  if (train_size > nonsports.size()) {
    throw DataError("build_splits: train_size " + std::to_string(train_size) + " exceeds the " +
                    std::to_string(nonsports.size()) + " non-sports records");
  }
  Rng rng(seed);
  const auto picks = rng.sample_without_replacement(nonsports.size(), train_size);
  std::vector<bool> in_train(nonsports.size(), false);
  splits.train.reserve(train_size);
  for (std::size_t p : picks) {
    splits.train.push_back(nonsports[p]);
    in_train[p] = true;
  }
  splits.pool_nonsports.reserve(nonsports.size() - train_size);
  for (std::size_t p = 0; p < nonsports.size(); ++p) {
    if (!in_train[p]) splits.pool_nonsports.push_back(nonsports[p]);
  }
  return splits;
}

std::size_t sports_count(std::size_t test_size, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("drift level must lie in [0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(rho * static_cast<double>(test_size) + 0.5));
  return std::min(count, test_size);
}

std::vector<std::size_t> make_drifted_test(const SplitSet& splits, std::size_t test_size,
                                           double rho, std::uint64_t seed) {
  const std::size_t sports = sports_count(test_size, rho);
  const std::size_t others = test_size - sports;
  if (sports > 0 && splits.pool_sports.empty()) {
    throw DataError("make_drifted_test: sports pool is empty");
  }
  if (others > 0 && splits.pool_nonsports.empty()) {
    throw DataError("make_drifted_test: non-sports pool is empty");
  }
  Rng rng(seed);
  std::vector<std::size_t> test;
  test.reserve(test_size);
  for (std::size_t i = 0; i < sports; ++i) {
    test.push_back(splits.pool_sports[rng.below(splits.pool_sports.size())]);
  }
  for (std::size_t i = 0; i < others; ++i) {
    test.push_back(splits.pool_nonsports[rng.below(splits.pool_nonsports.size())]);
  }
  rng.shuffle(test);
  return test;
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t level_index, std::size_t repeat) {
  return derive_seed(derive_seed(master_seed, kCellStream), level_index, repeat);
}

std::vector<double> ExperimentResult::mean_ks_statistic() const {
  return per_level_mean(*this, level_count(*this), &CellResult::ks_statistic);
}

std::vector<double> ExperimentResult::mean_mmd_statistic() const {
  return per_level_mean(*this, level_count(*this), &CellResult::mmd_statistic);
}

std::vector<std::size_t> experiment_train_indices(const ExperimentSpec& spec, const Dataset& dataset) {
  return build_splits(dataset, spec.train_size, derive_seed(spec.master_seed, kSplitStream)).train;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Dataset& dataset,
                                const EmbeddingInputs* embeddings, const ProgressSink& progress) {
  spec.validate();
  const SplitSet splits =
      build_splits(dataset, spec.train_size, derive_seed(spec.master_seed, kSplitStream));
  const std::uint64_t fit_seed = derive_seed(spec.master_seed, kFitStream);

  // The pipeline is fitted once, on train records only, and reused for every cell.
  std::optional<FittedPipeline> pipeline;
  Matrix reference;
  if (spec.pipeline == PipelineChoice::kTfidfLsa) {
    const auto train_docs = texts_of(dataset, splits.train);
    TfidfLsaOptions options;
    options.max_features = spec.max_features;
    options.components = spec.lsa_components;
    pipeline = FittedPipeline::fit_tfidf_lsa(train_docs, options, fit_seed);
    reference = pipeline->transform(std::span<const std::string>(train_docs));
  } else {
    if (embeddings == nullptr) throw ParameterError("embeddings pipeline requires embedding inputs");
    check_embedding_inputs(spec, dataset, splits, *embeddings);
    const Matrix& raw = embeddings->reference.vectors;
    pipeline = spec.pca_components > 0 ? FittedPipeline::fit_pca(raw, spec.pca_components, fit_seed)
                                       : FittedPipeline::identity(raw.cols());
    reference = pipeline->transform(raw);
  }

  ExperimentResult result;
  result.train_indices = splits.train;
  result.reference_width = reference.cols();

  const SignificanceConfig significance{spec.alpha};
  for (std::size_t level = 0; level < spec.drift_levels.size(); ++level) {
    const double rho = spec.drift_levels[level];
    for (std::size_t repeat = 0; repeat < spec.repeats; ++repeat) {
      const std::uint64_t seed = cell_seed(spec.master_seed, level, repeat);
      try {
        const auto test = make_drifted_test(splits, spec.test_size, rho,
                                            derive_seed(seed, kTestSetStream));
        Matrix current;
        if (spec.pipeline == PipelineChoice::kTfidfLsa) {
          const auto docs = texts_of(dataset, test);
          current = pipeline->transform(std::span<const std::string>(docs));
        } else {
          current = pipeline->transform(gather_rows(embeddings->current.vectors, test));
        }

        const KsResult ks = ks_multivariate(reference, current, significance);
        MmdOptions mmd_options;
        mmd_options.kernel.sigma = spec.sigma;
        mmd_options.kernel.heuristic_seed = derive_seed(seed, kHeuristicStream);
        mmd_options.permutations = spec.permutations;
        mmd_options.subsample_threshold = spec.mmd_subsample_threshold;
        mmd_options.max_rows_per_sample = spec.mmd_max_rows;
        const MmdResult mmd = mmd_permutation_test(reference, current, mmd_options,
                                                   derive_seed(seed, kPermutationStream), significance);

        CellResult cell;
        cell.level_index = level;
        cell.repeat = repeat;
        cell.drift_level = rho;
        cell.sports_docs = sports_count(spec.test_size, rho);
        cell.ks_p = ks.adjusted_p;
        cell.ks_statistic = ks.overall_statistic;
        cell.mmd_p = mmd.p_value;
        cell.mmd_statistic = mmd.statistic;
        cell.mmd_sigma = mmd.sigma_used;
        result.cells.push_back(cell);
        if (progress) {
          progress(format_line("level=%.2f repeat=%zu/%zu ks_stat=%.4f ks_p=%.4g mmd_stat=%.6f mmd_p=%.4f",
                               rho, repeat + 1, spec.repeats, ks.overall_statistic, ks.adjusted_p,
                               mmd.statistic, mmd.p_value));
        }
      } catch (const Error& e) {
        result.failures.push_back(CellFailure{level, repeat, rho, e.what()});
        if (progress) {
          progress(format_line("level=%.2f repeat=%zu/%zu FAILED: %s", rho, repeat + 1, spec.repeats,
                               e.what()));
        }
      }
    }
  }

  const std::string pipeline_id = spec.report_pipeline_id();
  for (const char* detector : {"ks", "mmd"}) {
    const bool is_ks = detector[0] == 'k';
    for (std::size_t level = 0; level < spec.drift_levels.size(); ++level) {
      std::vector<double> ps;
      for (const auto& cell : result.cells) {
        if (cell.level_index == level) ps.push_back(is_ks ? cell.ks_p : cell.mmd_p);
      }
      ReportRow row;
      row.pipeline = pipeline_id;
      row.detector = detector;
      row.drift_level = spec.drift_levels[level];
      row.mean_p = mean_of(ps);
      row.std_p = population_stddev(ps, row.mean_p);
      row.n_repeats = ps.size();
      row.significant = !ps.empty() && row.mean_p <= spec.alpha;
      result.report.rows.push_back(std::move(row));
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressSink& progress) {
  spec.validate();
  const Dataset dataset = load_agnews_csv(spec.dataset);
  if (spec.pipeline == PipelineChoice::kTfidfLsa) {
    return run_experiment(spec, dataset, nullptr, progress);
  }
  EmbeddingInputs inputs{read_embeddings(spec.reference_embeddings),
                         read_embeddings(spec.current_embeddings)};
  return run_experiment(spec, dataset, &inputs, progress);
}

void write_indices(const std::vector<std::size_t>& indices, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i : indices) out << i << '\n';
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<std::size_t> read_indices(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::size_t> indices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != line.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": not an index");
    }
    indices.push_back(static_cast<std::size_t>(v));
  }
  return indices;
}

}  // namespace driftlab
