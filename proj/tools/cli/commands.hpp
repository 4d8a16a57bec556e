#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace driftlab::cli {

struct FitOptions {
  std::string input;
  std::string pipeline = "tfidf-lsa";
  std::optional<long long> components;
  long long max_features = 20000;
  std::uint64_t seed = 0;
  std::string out;
};

struct DetectOptions {
  std::string model;
  std::string reference;
  std::string current;
  std::string detector = "both";
  double alpha = 0.05;
  long long permutations = 200;
  std::uint64_t seed = 0;
  std::optional<double> sigma;
  bool json = false;
};

struct ExperimentOptions {
  std::string config;
  std::string out;
  std::string markdown;
  std::string emit_train_indices;
};

struct ConvertOptions {
  std::string input;
  std::string out;
  bool labels = false;
};

// Each returns a process exit code; library exceptions propagate to run().
int cmd_fit(const FitOptions& o, std::ostream& out);
int cmd_detect(const DetectOptions& o, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err);
int cmd_convert(const ConvertOptions& o, std::ostream& out);

}  // namespace driftlab::cli
