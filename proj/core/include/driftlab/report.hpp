#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace driftlab {

/// One aggregated (pipeline, detector, drift level) cell of an experiment.
struct ReportRow {
  std::string pipeline;
  std::string detector;
  double drift_level = 0.0;
  double mean_p = 0.0;
  double std_p = 0.0;
  std::size_t n_repeats = 0;
  bool significant = false;  // mean_p <= alpha

  bool operator==(const ReportRow&) const = default;
};

struct DriftReport {
  std::vector<ReportRow> rows;

  bool operator==(const DriftReport&) const = default;
};

enum class ReportFormat { kCsv, kMarkdown };

inline constexpr std::string_view kReportCsvHeader =
    "pipeline,detector,drift_level,mean_p,std_p,n_repeats,significant";

/// CSV with the fixed header above; drift level with 2 decimals, p-values with 4.
std::string report_to_csv(const DriftReport& report);

/// Inverse of report_to_csv (values come back at their printed precision).
DriftReport report_from_csv(std::string_view text);

/// One table per pipeline, one body row per drift level, a mean/stddev column
/// pair per detector; significant means are bold.
std::string report_to_markdown(const DriftReport& report);

void write_report(const DriftReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace driftlab
