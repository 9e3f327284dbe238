#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace odmts {

/// Header-row CSV table. Quoted fields with embedded commas and doubled
/// quotes are accepted; every row must match the header width.
class CsvTable {
 public:
  static CsvTable parse(std::istream& in, std::string source);
  static CsvTable read_file(const std::string& path);

  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] std::size_t row_count() const { return rows_.size(); }
  [[nodiscard]] const std::vector<std::string>& row(std::size_t r) const { return rows_[r]; }
  [[nodiscard]] int line(std::size_t r) const { return lines_[r]; }
  [[nodiscard]] const std::string& source() const { return source_; }

  /// Column index; throws InputError naming the column when absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
  [[nodiscard]] bool has_column(std::string_view name) const;

  [[nodiscard]] const std::string& text(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  [[nodiscard]] double number(std::size_t r, std::size_t c) const;
  [[nodiscard]] long integer(std::size_t r, std::size_t c) const;
  [[nodiscard]] bool boolean(std::size_t r, std::size_t c) const;

 private:
  [[noreturn]] void fail(std::size_t r, std::size_t c, std::string_view what) const;

  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<int> lines_;
};

/// Minimal CSV writer; quotes fields containing separators or quotes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// Shortest round-trip decimal representation of a double.
[[nodiscard]] std::string format_number(double value);

}  // namespace odmts
