#include "geist/check/diagnostic.hpp"

#include <algorithm>

#include "json.hpp"

namespace geist::check {

bool has_errors(const std::vector<Diagnostic>& diagnostics) { return error_count(diagnostics) > 0; }

std::size_t error_count(const std::vector<Diagnostic>& diagnostics) {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::string format(const Diagnostic& d, bool color) {
  const bool error = d.severity == Severity::Error;
  std::string label = std::string(error ? "error" : "warning") + "[" + d.code + "]";
  if (color) label = std::string(error ? "\x1b[1;31m" : "\x1b[1;33m") + label + "\x1b[0m";
  return d.span.file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
         ": " + label + ": " + d.message;
}

std::string format_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["code"] = d.code;
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["file"] = d.span.file;
  j["line"] = d.span.line;
  j["col"] = d.span.column;
  j["message"] = d.message;
  return j.dump();
}

}  // namespace geist::check
