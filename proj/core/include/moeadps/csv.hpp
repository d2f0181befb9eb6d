#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moeadps::csv {

// Shortest round-trip decimal form, identical bytes for identical doubles.
std::string format(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

Table read(const std::filesystem::path& path);

// Writes through a temp file and renames, so readers never see partial data.
void write(const std::filesystem::path& path, const Table& table);
void write_text(const std::filesystem::path& path, const std::string& text);

double to_double(const std::string& cell);
long to_long(const std::string& cell);

}  // namespace moeadps::csv
