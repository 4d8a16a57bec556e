#include "driftlab/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include "driftlab/dataset.hpp"
#include "driftlab/error.hpp"

namespace driftlab {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

void require_plain_id(const std::string& id, const char* what) {
  if (id.empty() || id.find_first_of(",\"\r\n|") != std::string::npos) {
    throw ParameterError(std::string("report ") + what + " id '" + id +
                         "' must be non-empty and free of commas, quotes, pipes and newlines");
  }
}

double parse_double(const std::string& s, std::size_t row, const char* field) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DataError("report row " + std::to_string(row) + ": bad " + field + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::string report_to_csv(const DriftReport& report) {
  std::string out(kReportCsvHeader);
  out += '\n';
  for (const auto& row : report.rows) {
    require_plain_id(row.pipeline, "pipeline");
    require_plain_id(row.detector, "detector");
    out += row.pipeline;
    out += ',';
    out += row.detector;
    out += ',';
    out += fixed(row.drift_level, 2);
    out += ',';
    out += fixed(row.mean_p, 4);
    out += ',';
    out += fixed(row.std_p, 4);
    out += ',';
    out += std::to_string(row.n_repeats);
    out += ',';
    out += row.significant ? "true" : "false";
    out += '\n';
  }
  return out;
}

DriftReport report_from_csv(std::string_view text) {
  CsvReader reader(text);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw DataError("report: empty input");
  std::string header;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) header += ',';
    header += fields[i];
  }
  if (header != kReportCsvHeader) throw DataError("report: unexpected header '" + header + "'");

  DriftReport report;
  while (reader.next(fields)) {
    const std::size_t row = reader.record_number();
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 7) {
      throw DataError("report row " + std::to_string(row) + ": expected 7 fields");
    }
    ReportRow r;
    r.pipeline = fields[0];
    r.detector = fields[1];
    r.drift_level = parse_double(fields[2], row, "drift_level");
    r.mean_p = parse_double(fields[3], row, "mean_p");
    r.std_p = parse_double(fields[4], row, "std_p");
    const auto [end, ec] =
        std::from_chars(fields[5].data(), fields[5].data() + fields[5].size(), r.n_repeats);
    if (ec != std::errc{} || end != fields[5].data() + fields[5].size()) {
      throw DataError("report row " + std::to_string(row) + ": bad n_repeats");
    }
    if (fields[6] == "true") {
      r.significant = true;
    } else if (fields[6] != "false") {
      throw DataError("report row " + std::to_string(row) + ": bad significant flag");
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string report_to_markdown(const DriftReport& report) {
  // Preserve first-appearance order of pipelines, detectors and levels.
  std::vector<std::string> pipelines;
  std::vector<std::string> detectors;
  auto remember = [](std::vector<std::string>& seen, const std::string& v) {
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
  };
  for (const auto& row : report.rows) {
    require_plain_id(row.pipeline, "pipeline");
    require_plain_id(row.detector, "detector");
    remember(pipelines, row.pipeline);
    remember(detectors, row.detector);
  }

  std::string out;
  for (const auto& pipeline : pipelines) {
    std::vector<std::string> levels;
    std::map<std::pair<std::string, std::string>, const ReportRow*> cells;
    for (const auto& row : report.rows) {
      if (row.pipeline != pipeline) continue;
      const std::string level = fixed(row.drift_level, 2);
      remember(levels, level);
      cells[{level, row.detector}] = &row;
    }

    if (!out.empty()) out += '\n';
    out += "| model |";
    for (const auto& d : detectors) {
      std::string upper = d;
      std::transform(upper.begin(), upper.end(), upper.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      out += ' ' + upper + " mean | " + upper + " stddev |";
    }
    out += " drift level |\n|---|";
    for (std::size_t i = 0; i < detectors.size(); ++i) out += "---:|---:|";
    out += "---:|\n";

    for (const auto& level : levels) {
      out += "| " + pipeline + " |";
      for (const auto& d : detectors) {
        const auto it = cells.find({level, d});
        if (it == cells.end()) {
          out += " - | - |";
          continue;
        }
        const ReportRow& row = *it->second;
        const std::string mean = fixed(row.mean_p, 4);
        out += ' ' + (row.significant ? "**" + mean + "**" : mean) + " | " + fixed(row.std_p, 4) + " |";
      }
      out += ' ' + level + " |\n";
    }
  }
  return out;
}

void write_report(const DriftReport& report, ReportFormat format, const std::filesystem::path& path) {
  const std::string body =
      format == ReportFormat::kCsv ? report_to_csv(report) : report_to_markdown(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << body;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace driftlab
