#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "cli/commands.hpp"
#include "driftlab/error.hpp"

namespace driftlab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"driftlab: covariate drift detection for document vectors", "driftlab"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a reference pipeline and write a model file");
  fit_cmd->add_option("--input", fit.input, "AG-News CSV (tfidf-lsa) or .dlem embeddings (pca)")
      ->required();
  fit_cmd->add_option("--pipeline", fit.pipeline, "Pipeline kind")
      ->check(CLI::IsMember({"tfidf-lsa", "pca"}));
  fit_cmd->add_option("--components", fit.components, "Number of components (default 100 LSA, 50 PCA)")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--max-features", fit.max_features, "Vocabulary size cap (tfidf-lsa)")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--seed", fit.seed, "Random seed");
  fit_cmd->add_option("--out", fit.out, "Output model file (.dlpm)")->required();

  DetectOptions detect;
  auto* detect_cmd = app.add_subcommand("detect", "Compare a reference and a current sample");
  detect_cmd->add_option("--model", detect.model, "Fitted model file (.dlpm)");
  detect_cmd->add_option("--reference", detect.reference, "Reference sample (.csv or .dlem)")->required();
  detect_cmd->add_option("--current", detect.current, "Current sample (.csv or .dlem)")->required();
  detect_cmd->add_option("--detector", detect.detector, "Detector(s) to run")
      ->check(CLI::IsMember({"ks", "mmd", "both"}));
  detect_cmd->add_option("--alpha", detect.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  detect_cmd->add_option("--permutations", detect.permutations, "MMD permutation count")
      ->check(CLI::PositiveNumber);
  detect_cmd->add_option("--seed", detect.seed, "Random seed");
  detect_cmd->add_option("--sigma", detect.sigma, "Gaussian kernel width (default: median heuristic)")
      ->check(CLI::PositiveNumber);
  detect_cmd->add_flag("--json", detect.json, "Emit a JSON object instead of text");

  ExperimentOptions experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a drift-injection experiment grid");
  experiment_cmd->add_option("--config", experiment.config, "Experiment JSON config")->required();
  experiment_cmd->add_option("--out", experiment.out, "Report CSV output");
  experiment_cmd->add_option("--markdown", experiment.markdown, "Optional markdown table output");
  experiment_cmd->add_option("--emit-train-indices", experiment.emit_train_indices,
                             "Write the train record indices and exit");

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert embeddings between numeric CSV and .dlem");
  convert_cmd->add_option("--input", convert.input, "Input file (.csv or .dlem)")->required();
  convert_cmd->add_option("--out", convert.out, "Output file (.dlem or .csv)")->required();
  convert_cmd->add_flag("--labels", convert.labels, "CSV input carries an integer label in column 1");

  std::vector<const char*> argv{"driftlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*detect_cmd) {
      if (!(detect.alpha > 0.0 && detect.alpha < 1.0)) {
        throw ParameterError("--alpha must lie in (0, 1)");
      }
      return cmd_detect(detect, out, err);
    }
    if (*experiment_cmd) {
      if (experiment.out.empty() && experiment.emit_train_indices.empty()) {
        throw ParameterError("experiment: --out is required");
      }
      return cmd_experiment(experiment, out, err);
    }
    if (*convert_cmd) return cmd_convert(convert, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace driftlab::cli
