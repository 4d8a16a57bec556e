#include "driftlab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "driftlab/error.hpp"

namespace driftlab {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kWorld:
      return "World";
    case Category::kSports:
      return "Sports";
    case Category::kBusiness:
      return "Business";
    case Category::kSciTech:
      return "SciTech";
  }
  return "?";
}

std::size_t Dataset::count(Category c) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [c](const NewsRecord& r) { return r.label == c; }));
}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  if (pos_ >= text_.size()) return false;
  record_line_ = line_;
  ++record_;

  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  while (pos_ < text_.size()) {
    const char ch = text_[pos_];
    if (in_quotes) {
      if (ch == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          field.push_back('"');
          pos_ += 2;
        } else {
          in_quotes = false;
          ++pos_;
        }
        continue;
      }
      if (ch == '\n') ++line_;
      field.push_back(ch);
      ++pos_;
      continue;
    }
    if (ch == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      ++pos_;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
      ++pos_;
    } else if (ch == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
      pos_ += 2;
      ++line_;
      fields.push_back(std::move(field));
      return true;
    } else if (ch == '\n') {
      ++pos_;
      ++line_;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
      ++pos_;
    }
  }
  if (in_quotes) {
    throw DataError("CSV record " + std::to_string(record_) + " (line " +
                    std::to_string(record_line_) + "): unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

constexpr std::size_t kMaxReportedErrors = 20;

}  // namespace

Dataset parse_agnews_csv(std::string_view text, std::string_view origin) {
  Dataset dataset;
  std::vector<std::string> errors;
  std::size_t error_count = 0;
  auto reject = [&](std::size_t row, const std::string& why) {
    ++error_count;
    if (errors.size() < kMaxReportedErrors) {
      errors.push_back("row " + std::to_string(row) + ": " + why);
    }
  };

  CsvReader reader(text);
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::size_t row = reader.record_number();
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    if (fields.size() != 3) {
      reject(row, "expected 3 fields, found " + std::to_string(fields.size()));
      continue;
    }
    const std::string_view label_text = trim(fields[0]);
    int label = 0;
    const auto [end, ec] =
        std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (ec != std::errc{} || end != label_text.data() + label_text.size()) {
      reject(row, "class index '" + std::string(label_text) + "' is not an integer");
      continue;
    }
    if (label < 1 || label > 4) {
      reject(row, "class index " + std::to_string(label) + " outside 1-4");
      continue;
    }
    if (trim(fields[1]).empty() && trim(fields[2]).empty()) {
      ++dataset.skipped_empty;
      continue;
    }
    dataset.records.push_back(NewsRecord{static_cast<Category>(label), std::move(fields[1]),
                                         std::move(fields[2]), row});
  }

  if (error_count > 0) {
    std::ostringstream msg;
    msg << origin << ": " << error_count << " malformed row" << (error_count == 1 ? "" : "s");
    for (const auto& e : errors) msg << "\n  " << e;
    if (error_count > errors.size()) msg << "\n  ...";
    throw DataError(msg.str());
  }
  return dataset;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Dataset load_agnews_csv(const std::filesystem::path& path) {
  return parse_agnews_csv(read_text_file(path), path.string());
}

}  // namespace driftlab
