#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <variant>

#include "cli/cli.hpp"
#include "cli/json_io.hpp"
#include "driftlab/dataset.hpp"
#include "driftlab/detect.hpp"
#include "driftlab/embedding_io.hpp"
#include "driftlab/error.hpp"
#include "driftlab/harness.hpp"
#include "driftlab/pipeline.hpp"
#include "driftlab/report.hpp"
#include "driftlab/rng.hpp"

namespace driftlab::cli {

namespace {

namespace fs = std::filesystem;

using Documents = std::vector<std::string>;
using Sample = std::variant<Documents, Matrix>;

bool is_embedding_file(const fs::path& p) { return p.extension() == ".dlem"; }

Documents load_documents(const fs::path& path) {
  const Dataset dataset = load_agnews_csv(path);
  Documents docs;
  docs.reserve(dataset.size());
  for (const auto& r : dataset.records) docs.push_back(r.text());
  return docs;
}

Sample load_sample(const fs::path& path) {
  if (is_embedding_file(path)) return read_embeddings(path).vectors;
  return load_documents(path);
}

std::string describe(const Sample& s) {
  return std::holds_alternative<Documents>(s) ? "documents" : "embedding vectors";
}

// Applies the model (if any) and checks widths; mismatches are data errors.
Matrix prepare(const Sample& sample, const FittedPipeline* model, const std::string& label) {
  if (model == nullptr) {
    if (std::holds_alternative<Documents>(sample)) {
      throw ParameterError(label + ": text input requires --model with a tfidf-lsa pipeline");
    }
    return std::get<Matrix>(sample);
  }
  if (model->accepts_documents()) {
    if (!std::holds_alternative<Documents>(sample)) {
      throw ParameterError(label + ": tfidf-lsa model expects an AG-News CSV, got " + describe(sample));
    }
    return model->transform(std::span<const std::string>(std::get<Documents>(sample)));
  }
  if (!std::holds_alternative<Matrix>(sample)) {
    throw ParameterError(label + ": " + std::string(to_string(model->kind())) +
                         " model expects a .dlem embedding file");
  }
  const Matrix& m = std::get<Matrix>(sample);
  if (m.cols() != model->input_width()) {
    throw DataError(label + " width " + std::to_string(m.cols()) + " does not match model width " +
                    std::to_string(model->input_width()));
  }
  return model->transform(m);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Matrix read_numeric_csv(const fs::path& path, bool labels, std::vector<std::uint8_t>& label_out) {
  const std::string text = read_text_file(path);
  CsvReader reader(text);
  std::vector<std::string> fields;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    const std::size_t row = reader.record_number();
    std::size_t first = 0;
    if (labels) {
      char* end = nullptr;
      const long v = std::strtol(fields[0].c_str(), &end, 10);
      if (fields[0].empty() || *end != '\0' || v < 0 || v > 255) {
        throw DataError(path.string() + " row " + std::to_string(row) + ": bad label '" + fields[0] + "'");
      }
      label_out.push_back(static_cast<std::uint8_t>(v));
      first = 1;
    }
    std::vector<double> values;
    for (std::size_t i = first; i < fields.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(fields[i].c_str(), &end);
      if (fields[i].empty() || *end != '\0') {
        throw DataError(path.string() + " row " + std::to_string(row) + ": bad number '" + fields[i] + "'");
      }
      values.push_back(v);
    }
    if (rows.empty()) width = values.size();
    if (values.size() != width) {
      throw DataError(path.string() + " row " + std::to_string(row) + ": expected " +
                      std::to_string(width) + " values, found " + std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  }
  return m;
}

}  // namespace

int cmd_fit(const FitOptions& o, std::ostream& out) {
  std::optional<FittedPipeline> pipeline;
  if (o.pipeline == "tfidf-lsa") {
    if (is_embedding_file(o.input)) {
      throw ParameterError("fit: tfidf-lsa needs an AG-News CSV input, not a .dlem file");
    }
    const Documents docs = load_documents(o.input);
    TfidfLsaOptions options;
    options.max_features = static_cast<std::size_t>(o.max_features);
    options.components = static_cast<Index>(o.components.value_or(kDefaultLsaComponents));
    pipeline = FittedPipeline::fit_tfidf_lsa(docs, options, o.seed);
  } else {
    if (!is_embedding_file(o.input)) throw ParameterError("fit: pca needs a .dlem embedding input");
    const Embeddings e = read_embeddings(o.input);
    const Index k = static_cast<Index>(o.components.value_or(kDefaultPcaComponents));
    pipeline = FittedPipeline::fit_pca(e.vectors, k, o.seed);
  }
  save_pipeline(*pipeline, o.out);
  out << "fitted " << to_string(pipeline->kind()) << " d=" << pipeline->input_width()
      << " k=" << pipeline->output_width() << '\n';
  if (pipeline->effective_rank() < pipeline->output_width()) {
    out << "note: effective rank " << pipeline->effective_rank() << " < k; trailing components zero-filled\n";
  }
  return kExitOk;
}

int cmd_detect(const DetectOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<FittedPipeline> model;
  if (!o.model.empty()) model = load_pipeline(o.model);
  const FittedPipeline* model_ptr = model ? &*model : nullptr;

  const Matrix reference = prepare(load_sample(o.reference), model_ptr, "reference");
  const Matrix current = prepare(load_sample(o.current), model_ptr, "current");
  if (reference.cols() != current.cols()) {
    throw DataError("width mismatch: reference has " + std::to_string(reference.cols()) +
                    " columns, current has " + std::to_string(current.cols()));
  }

  const SignificanceConfig significance{o.alpha};
  const bool run_ks = o.detector != "mmd";
  const bool run_mmd = o.detector != "ks";
  bool drift = false;
  nlohmann::json doc = nlohmann::json::object();

  if (run_ks) {
    const KsResult ks = ks_multivariate(reference, current, significance);
    drift = drift || ks.drift_detected;
    if (o.json) {
      doc["ks"] = ks;
    } else {
      out << "ks: statistic=" << fmt("%.6f", ks.overall_statistic)
          << " adjusted_p=" << fmt("%.6g", ks.adjusted_p) << " dims=" << ks.dims
          << " alpha=" << fmt("%g", ks.alpha) << " drift=" << (ks.drift_detected ? "yes" : "no") << '\n';
    }
  }
  if (run_mmd) {
    MmdOptions options;
    options.kernel.sigma = o.sigma;
    options.kernel.heuristic_seed = derive_seed(o.seed, 1);
    options.permutations = static_cast<std::size_t>(o.permutations);
    try {
      const MmdResult mmd = mmd_permutation_test(reference, current, options, o.seed, significance);
      drift = drift || mmd.drift_detected;
      if (o.json) {
        doc["mmd"] = mmd;
      } else {
        out << "mmd: statistic=" << fmt("%.6g", mmd.statistic) << " p=" << fmt("%.4f", mmd.p_value)
            << " permutations=" << mmd.permutations << " sigma=" << fmt("%.6g", mmd.sigma_used)
            << " drift=" << (mmd.drift_detected ? "yes" : "no") << '\n';
      }
    } catch (const DegenerateDataError& e) {
      if (o.json) {
        doc["mmd"] = {{"status", "no variation"}, {"message", e.what()}};
      } else {
        out << "mmd: no variation (" << e.what() << ")\n";
      }
      err << "warning: MMD skipped: " << e.what() << '\n';
    }
  }
  if (o.json) {
    doc["drift_detected"] = drift;
    out << doc.dump(2) << '\n';
  }
  return drift ? kExitDrift : kExitOk;
}

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentSpec spec = load_experiment_spec(o.config);
  if (!o.emit_train_indices.empty()) {
    const Dataset dataset = load_agnews_csv(spec.dataset);
    const auto indices = experiment_train_indices(spec, dataset);
    write_indices(indices, o.emit_train_indices);
    out << "wrote " << indices.size() << " train indices to " << o.emit_train_indices << '\n';
    if (o.out.empty()) return kExitOk;
  }

  const ExperimentResult result =
      run_experiment(spec, [&out](const std::string& line) { out << line << '\n' << std::flush; });
  write_report(result.report, ReportFormat::kCsv, o.out);
  if (!o.markdown.empty()) write_report(result.report, ReportFormat::kMarkdown, o.markdown);
  out << "wrote " << result.report.rows.size() << " report rows to " << o.out << '\n';

  if (!result.failures.empty()) {
    for (const auto& f : result.failures) {
      err << "cell level=" << f.drift_level << " repeat=" << f.repeat + 1 << " failed: " << f.message << '\n';
    }
    err << result.failures.size() << " cell(s) failed; affected rows aggregate fewer repeats\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_convert(const ConvertOptions& o, std::ostream& out) {
  const fs::path input(o.input);
  const fs::path output(o.out);
  if (!is_embedding_file(input) && is_embedding_file(output)) {
    std::vector<std::uint8_t> labels;
    const Matrix m = read_numeric_csv(input, o.labels, labels);
    if (m.rows() == 0) throw DataError(input.string() + ": no rows");
    std::optional<std::vector<std::uint8_t>> maybe_labels;
    if (o.labels) maybe_labels = std::move(labels);
    write_embeddings(m, maybe_labels, output);
    out << "wrote " << m.rows() << "x" << m.cols() << " embeddings to " << output.string() << '\n';
    return kExitOk;
  }
  if (is_embedding_file(input) && !is_embedding_file(output)) {
    const Embeddings e = read_embeddings(input);
    std::ofstream file(output, std::ios::trunc);
    if (!file) throw DataError("cannot open '" + output.string() + "' for writing");
    char buf[32];
    for (Index r = 0; r < e.vectors.rows(); ++r) {
      if (e.labels) file << static_cast<int>((*e.labels)[static_cast<std::size_t>(r)]) << ',';
      for (Index c = 0; c < e.vectors.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.9g", e.vectors(r, c));
        file << (c ? "," : "") << buf;
      }
      file << '\n';
    }
    out << "wrote " << e.vectors.rows() << "x" << e.vectors.cols() << " values to " << output.string() << '\n';
    return kExitOk;
  }
  throw ParameterError("convert: exactly one of --input/--out must be a .dlem file");
}

}  // namespace driftlab::cli
