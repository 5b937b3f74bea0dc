// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbp {

/// Rectangular CSV payload with '#'-prefixed metadata comment lines.
/// Numeric cells are serialized with 17 significant digits so parsing an
/// emitted file and re-emitting reproduces it byte for byte.
struct CsvTable {
  std::vector<std::string> comments;  ///< without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_cell(double value);

void write_csv(const CsvTable& table, std::ostream& os);
std::string csv_to_string(const CsvTable& table);

/// Writes through CBP_OUTPUT_DIR resolution; throws IoError on failure.
void write_csv_file(const CsvTable& table, const std::string& path);

CsvTable parse_csv(std::istream& is);
CsvTable parse_csv_string(const std::string& text);

/// Prepends the CBP_OUTPUT_DIR environment variable to relative paths.
std::string resolve_output_path(const std::string& path);

}  // namespace cbp
