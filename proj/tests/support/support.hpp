#pragma once

// Shared test helpers: scratch directories, in-process CLI runs, a generator
// of random well-typed programs, and brute-force oracles that do not use the
// library's own kernels.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "geist/lang/ast.hpp"

namespace testsupport {

namespace fs = std::filesystem;

/// A fresh, empty directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag);
  ~ScratchDir();
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& text);

/// Parses or throws std::runtime_error with the first parse error.
geist::lang::ModelProgram parse_or_throw(const std::string& source,
                                         const std::string& file = "<test>");

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

/// Directory holding the checked-in .geist corpus.
fs::path corpus_dir();

/// Every .geist file under corpus_dir(), sorted.
std::vector<fs::path> corpus_files();

// ---------------------------------------------------------------------------
// Random well-typed programs.

struct FuzzOptions {
  std::size_t max_depth = 4;     // levels in the axis hierarchy (at least 2 unless this is 1)
  std::size_t max_obs = 40;
  bool data_files = false;       // write vec/idx/map data to CSV files
};

struct FuzzProgram {
  std::string text;
  std::map<std::string, std::string> files;  // relative name -> CSV contents
  std::size_t depth = 0;                     // levels actually generated

  /// Writes the program (as `name`) and its data files into `dir`.
  fs::path write(const fs::path& dir, const std::string& name = "model.geist") const;
};

/// A random forest of axes (plus an occasional second parent from an extra
/// root) with unique lift paths, index arrays over random axes, and
/// annotated lets that pin the type of every lift, gather and reindex.
FuzzProgram generate_program(std::uint64_t seed, const FuzzOptions& options = {});

// ---------------------------------------------------------------------------
// Oracles.

std::vector<double> loop_gather(const std::vector<double>& vec,
                                const std::vector<std::size_t>& idx);
std::vector<double> loop_lift(const std::vector<std::size_t>& map,
                              const std::vector<double>& vec);
std::vector<std::size_t> loop_reindex(const std::vector<std::size_t>& map,
                                      const std::vector<std::size_t>& idx);

/// Log-density of one Normal term written out directly.
double normal_term(double x, double mu, double sigma);

/// Number of directed paths from `from` to `to` (from != to) by exhaustive DFS.
std::size_t brute_force_paths(const std::vector<std::pair<int, int>>& edges, int from, int to);

/// True iff the directed graph has a cycle, by DFS from every node.
bool brute_force_has_cycle(const std::vector<std::pair<int, int>>& edges, int nodes);

}  // namespace testsupport
