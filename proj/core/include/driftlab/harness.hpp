#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftlab/dataset.hpp"
#include "driftlab/embedding_io.hpp"
#include "driftlab/experiment_spec.hpp"
#include "driftlab/report.hpp"

namespace driftlab {

/// Record positions (indices into Dataset::records) for one experiment.
struct SplitSet {
  std::vector<std::size_t> train;           // non-sports, in draw order
  std::vector<std::size_t> pool_nonsports;  // non-sports minus train, dataset order
  std::vector<std::size_t> pool_sports;     // every sports record, dataset order
};

/// Uniform sample without replacement of `train_size` non-sports records.
SplitSet build_splits(const Dataset& dataset, std::size_t train_size, std::uint64_t seed);

/// Number of sports documents in a test set: round-half-up(rho * test_size).
std::size_t sports_count(std::size_t test_size, double rho);

/// Test set of `test_size` record positions drawn with replacement: the
/// sports share from pool_sports, the rest from pool_nonsports, shuffled.
std::vector<std::size_t> make_drifted_test(const SplitSet& splits, std::size_t test_size,
                                           double rho, std::uint64_t seed);

/// Seed for one (drift level, repeat) cell; independent of execution order.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t level_index, std::size_t repeat);

struct CellResult {
  std::size_t level_index = 0;
  std::size_t repeat = 0;
  double drift_level = 0.0;
  std::size_t sports_docs = 0;
  double ks_p = 1.0;
  double ks_statistic = 0.0;
  double mmd_p = 1.0;
  double mmd_statistic = 0.0;
  double mmd_sigma = 0.0;
};

struct CellFailure {
  std::size_t level_index = 0;
  std::size_t repeat = 0;
  double drift_level = 0.0;
  std::string message;
};

struct ExperimentResult {
  DriftReport report;
  std::vector<CellResult> cells;      // level-major, then repeat
  std::vector<CellFailure> failures;
  std::vector<std::size_t> train_indices;
  Index reference_width = 0;          // detector-ready dimensionality

  /// Mean KS overall statistic / MMD statistic per drift level over successful cells.
  std::vector<double> mean_ks_statistic() const;
  std::vector<double> mean_mmd_statistic() const;
};

/// Optional progress sink; receives one human-readable line per cell.
using ProgressSink = std::function<void(const std::string&)>;

/// Externally exported vectors for the embeddings pipeline.
struct EmbeddingInputs {
  Embeddings reference;  // one row per train record, train order
  Embeddings current;    // one row per dataset record, dataset order
};

/// Runs the whole grid on already loaded inputs. `embeddings` must be set
/// for the embeddings pipeline and is ignored otherwise.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Dataset& dataset,
                                const EmbeddingInputs* embeddings,
                                const ProgressSink& progress = {});

/// Loads the dataset (and embedding files) named by the spec, then runs it.
ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressSink& progress = {});

/// Train record positions the spec would use; the exporter consumes these.
std::vector<std::size_t> experiment_train_indices(const ExperimentSpec& spec, const Dataset& dataset);

/// One 0-based index per line.
void write_indices(const std::vector<std::size_t>& indices, const std::filesystem::path& path);
std::vector<std::size_t> read_indices(const std::filesystem::path& path);

}  // namespace driftlab
