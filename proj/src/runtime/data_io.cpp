#include "geist/runtime/data_io.hpp"

#include <charconv>
#include <fstream>

namespace geist::runtime {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFileError("cannot write " + path.string());
  return out;
}

}  // namespace

Column read_column(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFileError("cannot open data file " + path.string());
  Column col;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string cell = trim(line);
    if (cell.empty()) continue;
    if (!have_header) {
      col.header = std::move(cell);
      have_header = true;
      continue;
    }
    col.cells.push_back(std::move(cell));
    col.lines.push_back(line_no);
  }
  if (!have_header) throw DataFileError(path.string() + ": missing header line");
  return col;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_column(const std::filesystem::path& path, const std::string& header,
                  std::span<const double> values) {
  auto out = open_for_write(path);
  out << header << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

void write_column(const std::filesystem::path& path, const std::string& header,
                  std::span<const std::size_t> values) {
  auto out = open_for_write(path);
  out << header << '\n';
  for (std::size_t v : values) out << v << '\n';
}

}  // namespace geist::runtime
