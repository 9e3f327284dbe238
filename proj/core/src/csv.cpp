#include "odmts/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "odmts/errors.hpp"

namespace odmts {

namespace {

// Splits one logical record; may consume further physical lines when a
// quoted field spans a newline.
bool read_record(std::istream& in, std::vector<std::string>& fields, int& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (quoted) {
        std::string next;
        if (!std::getline(in, next)) throw InputError("unterminated quoted field at line " + std::to_string(line_no));
        ++line_no;
        field.push_back('\n');
        line = std::move(next);
        i = 0;
        continue;
      }
      break;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
    ++i;
  }
  fields.push_back(std::move(field));
  return true;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

CsvTable CsvTable::parse(std::istream& in, std::string source) {
  CsvTable table;
  table.source_ = std::move(source);
  int line_no = 0;
  std::vector<std::string> fields;
  if (!read_record(in, fields, line_no)) throw InputError(table.source_ + ": missing header row");
  if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);
  for (auto& f : fields) table.header_.push_back(trim(f));
  while (true) {
    const int start = line_no + 1;
    if (!read_record(in, fields, line_no)) break;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != table.header_.size()) {
      throw InputError(table.source_ + ":" + std::to_string(start) + ": expected " +
                       std::to_string(table.header_.size()) + " fields, found " + std::to_string(fields.size()));
    }
    for (auto& f : fields) f = trim(f);
    table.rows_.push_back(fields);
    table.lines_.push_back(start);
  }
  return table;
}

CsvTable CsvTable::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse(in, path);
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::size_t CsvTable::column(std::string_view name) const {
  auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw InputError(source_ + ": missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header_.begin());
}

void CsvTable::fail(std::size_t r, std::size_t c, std::string_view what) const {
  throw InputError(source_ + ":" + std::to_string(lines_[r]) + ": column '" + header_[c] + "': " + std::string(what) +
                   " '" + rows_[r][c] + "'");
}

double CsvTable::number(std::size_t r, std::size_t c) const {
  const std::string& s = rows_[r][c];
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) fail(r, c, "not a number");
  return v;
}

long CsvTable::integer(std::size_t r, std::size_t c) const {
  const std::string& s = rows_[r][c];
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) fail(r, c, "not an integer");
  return v;
}

bool CsvTable::boolean(std::size_t r, std::size_t c) const {
  std::string s = rows_[r][c];
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no" || s.empty()) return false;
  fail(r, c, "not a boolean");
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char c : f) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << f;
    }
  }
  out_ << '\n';
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, ptr);
}

}  // namespace odmts
