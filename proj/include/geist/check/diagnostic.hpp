#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geist/lang/lexer.hpp"

namespace geist::check {

using lang::SourceSpan;

enum class Severity { Error, Warning };

// Diagnostic codes.
//   E001 lex error, E002 parse error
//   E101 index axis mismatch (gather / reindex)
//   E102 lift target not reachable through registered maps
//   E103 annotation does not match the inferred type
//   E104 arithmetic or observation across different axes
//   E105 unknown identifier
//   E106 dataset mismatch
//   E107 operand of the wrong kind (e.g. an Idx where a Vec is required)
//   E108 duplicate declaration
//   E109 invalid declaration (zero size, wrong namespace)
//   E201 index out of bounds at load, E202 length mismatch at load
//   E203 duplicate map registration, E204 map would create a cycle
//   E205 ambiguous lift path
//   E206 malformed or unreadable data, E207 symbolic vec evaluated
//   E208 shape error in unchecked evaluation, E209 lift with no usable path
//   W301 shadowed binding, W302 unused declaration
struct Diagnostic {
  std::string code;
  SourceSpan span;
  std::string message;
  Severity severity = Severity::Error;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::size_t error_count(const std::vector<Diagnostic>& diagnostics);

/// `<file>:<line>:<col>: error[E101]: <message>`
std::string format(const Diagnostic& d, bool color = false);

/// One JSON object per diagnostic: code, severity, file, line, col, message.
std::string format_json(const Diagnostic& d);

}  // namespace geist::check
