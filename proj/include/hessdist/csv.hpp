#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hessdist {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Shortest round-trip-safe rendering: 17 significant digits.
std::string format_double(double value);

// RFC 4180 text with LF line endings. Fields containing a comma, quote or
// newline are quoted.
std::string to_csv(const CsvTable& table);

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string& path);

// Throws IoError when the file cannot be written.
void write_output(const CsvTable& table, const std::string& path);

}  // namespace hessdist
