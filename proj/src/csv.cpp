// SPDX-License-Identifier: Apache-2.0

#include "cbp/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cbp/errors.hpp"

namespace cbp {

std::string format_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const CsvTable& table, std::ostream& os) {
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    os << (i ? "," : "") << table.header[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << "\n";
  }
}

std::string csv_to_string(const CsvTable& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("CBP_OUTPUT_DIR");
  if (!dir || !*dir) return path;
  std::string out = dir;
  if (out.back() != '/') out += '/';
  return out + path;
}

void write_csv_file(const CsvTable& table, const std::string& path) {
  const std::string resolved = resolve_output_path(path);
  std::ofstream os(resolved);
  if (!os) throw IoError("cannot open output file: " + resolved);
  write_csv(table, os);
  os.flush();
  if (!os) throw IoError("write failed: " + resolved);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

CsvTable parse_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t start = 1;
      if (start < line.size() && line[start] == ' ') ++start;
      table.comments.push_back(line.substr(start));
      continue;
    }
    if (!have_header) {
      table.header = split_row(line);
      have_header = true;
    } else {
      table.rows.push_back(split_row(line));
    }
  }
  return table;
}

CsvTable parse_csv_string(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

}  // namespace cbp
