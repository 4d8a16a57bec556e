#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace driftlab {

/// News category; the numeric value is the class index used by the AG-News CSV.
enum class Category : std::uint8_t { kWorld = 1, kSports = 2, kBusiness = 3, kSciTech = 4 };

std::string_view to_string(Category c);

struct NewsRecord {
  Category label;
  std::string title;
  std::string description;
  std::size_t source_row = 0;  // 1-based CSV record number

  /// Title and description joined by a single space.
  std::string text() const { return title + " " + description; }
};

struct Dataset {
  std::vector<NewsRecord> records;
  /// Rows dropped because title and description were both blank.
  std::size_t skipped_empty = 0;

  std::size_t size() const noexcept { return records.size(); }
  std::size_t count(Category c) const;
};

/// Minimal RFC-4180 reader: comma separated, double-quote quoting with ""
/// escapes, CRLF or LF record ends, embedded newlines inside quotes.
class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {}

  /// Reads the next record into `fields`; false at end of input.
  /// Throws DataError on an unterminated quoted field.
  bool next(std::vector<std::string>& fields);

  /// 1-based number of the record most recently returned by next().
  std::size_t record_number() const noexcept { return record_; }
  /// 1-based physical line where that record started.
  std::size_t line_number() const noexcept { return record_line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_ = 0;
  std::size_t record_line_ = 0;
};

/// Parses AG-News style CSV text (class index 1-4, title, description).
/// Every malformed row is collected; if any exist a single DataError lists them.
Dataset parse_agnews_csv(std::string_view text, std::string_view origin = "<memory>");
Dataset load_agnews_csv(const std::filesystem::path& path);

/// Reads a whole file into memory; DataError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace driftlab
