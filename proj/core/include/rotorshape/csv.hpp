#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rotorshape {

/// Numeric table with a comment preamble ("# ..." lines) and a header row.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
};

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace rotorshape
