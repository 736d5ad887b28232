#pragma once

// Single-column CSV: one header line naming the symbol, then one value per
// line. Blank lines are ignored.

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geist::runtime {

struct Column {
  std::string header;
  std::vector<std::string> cells;
  std::vector<std::size_t> lines;  // 1-based file line of each cell
};

class DataFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws DataFileError if the file cannot be read or has no header.
Column read_column(const std::filesystem::path& path);

void write_column(const std::filesystem::path& path, const std::string& header,
                  std::span<const double> values);
void write_column(const std::filesystem::path& path, const std::string& header,
                  std::span<const std::size_t> values);

/// Shortest decimal spelling that reads back to the same double.
std::string format_double(double value);

}  // namespace geist::runtime
