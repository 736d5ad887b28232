#pragma once

// The `geist` command line, callable in-process.
//
//   geist check <file> [--json]
//   geist eval <file> [--unsafe-skip-check] [--values]
//   geist demo radon --states S --counties J --homes N --seed K --out DIR
//   geist mutate <file> --trials T --seed K [--json]
//
// Exit status: 0 ok, 1 type errors, 2 syntax or usage errors, 3 I/O, data
// or configuration errors.

#include <iosfwd>

namespace geist::cli {

enum ExitCode : int { kOk = 0, kTypeError = 1, kSyntaxError = 2, kDataError = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geist::cli
