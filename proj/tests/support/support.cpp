#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "geist/cli.hpp"
#include "geist/lang/parser.hpp"
#include "geist/runtime/data_io.hpp"

namespace testsupport {

ScratchDir::ScratchDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  path_ = fs::temp_directory_path() /
          ("geist-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

geist::lang::ModelProgram parse_or_throw(const std::string& source, const std::string& file) {
  auto result = geist::lang::parse_source(source, file);
  if (!result.ok()) {
    const auto& e = result.errors.front();
    throw std::runtime_error(file + ":" + std::to_string(e.span.line) + ":" +
                             std::to_string(e.span.column) + ": " + e.message);
  }
  return std::move(result.program);
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"geist"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.exit_code = geist::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path corpus_dir() { return fs::path(GEIST_CORPUS_DIR); }

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(corpus_dir())) {
    if (entry.is_regular_file() && entry.path().extension() == ".geist") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

fs::path FuzzProgram::write(const fs::path& dir, const std::string& name) const {
  for (const auto& [file, contents] : files) write_file(dir / file, contents);
  write_file(dir / name, text);
  return dir / name;
}

namespace {

struct AxisInfo {
  std::string name;
  std::size_t size = 1;
  int parent = -1;
  int extra_parent = -1;
  std::size_t level = 0;
};

class Generator {
 public:
  Generator(std::uint64_t seed, const FuzzOptions& options) : rng_(seed), options_(options) {}

  FuzzProgram run() {
    build_axes();
    const std::size_t n_obs = 1 + below(options_.max_obs);

    decl_ << "dataset Data obs " << n_obs << "\n";
    for (const auto& a : axes_) decl_ << "axis " << a.name << " size " << a.size << "\n";

    // Maps, one per edge.
    for (std::size_t c = 0; c < axes_.size(); ++c) {
      for (int p : {axes_[c].parent, axes_[c].extra_parent}) {
        if (p < 0) continue;
        std::vector<std::size_t> entries(axes_[c].size);
        for (auto& e : entries) e = below(axes_[p].size);
        const std::string name = map_name(p, static_cast<int>(c));
        decl_ << "map " << name << " : " << axes_[p].name << " -> " << axes_[c].name
              << " in Data" << source(name, entries) << "\n";
      }
    }

    // Index arrays over random axes.
    const std::size_t n_idx = 1 + below(3);
    std::vector<int> idx_axis;
    for (std::size_t j = 0; j < n_idx; ++j) {
      const int k = static_cast<int>(below(axes_.size()));
      idx_axis.push_back(k);
      std::vector<std::size_t> entries(n_obs);
      for (auto& e : entries) e = below(axes_[k].size);
      const std::string name = "i" + std::to_string(j);
      decl_ << "idx " << name << " : " << axes_[k].name << " in Data" << source(name, entries)
            << "\n";
    }

    // Root parameter vectors.
    for (const auto& a : axes_) {
      if (a.parent >= 0) continue;
      decl_ << "vec w_" << a.name << " : " << a.name << source("w_" + a.name, normals(a.size))
            << "\n";
    }

    // Child parameter vectors, parents before children.
    for (std::size_t c = 0; c < axes_.size(); ++c) {
      const auto& a = axes_[c];
      if (a.parent < 0) continue;
      std::string expr = "lift(w_" + axes_[a.parent].name + ", " + a.name + ")";
      if (a.extra_parent >= 0) {
        expr += " + 0.5 * lift(w_" + axes_[a.extra_parent].name + ", " + a.name + ")";
      }
      const int grand = axes_[a.parent].parent;
      if (grand >= 0 && coin()) {
        expr = "0.75 * " + expr + " + lift(w_" + axes_[grand].name + ", " + a.name + ")";
      }
      body_ << "let w_" << a.name << " : Vec[" << a.name << "] = " << expr << "\n";
    }

    // Observed child-level vectors.
    for (std::size_t c = 0; c < axes_.size(); ++c) {
      const auto& a = axes_[c];
      if (a.parent < 0 || !coin()) continue;
      decl_ << "vec z_" << a.name << " : " << a.name << source("z_" + a.name, normals(a.size))
            << "\n";
      body_ << "observe z_" << a.name << " ~ normal(w_" << a.name << ", 1.25)\n";
    }

    // Observation-level terms.
    std::vector<std::string> terms;
    for (std::size_t j = 0; j < n_idx; ++j) {
      const auto& k = axes_[idx_axis[j]];
      const std::string e = "e" + std::to_string(j);
      body_ << "let " << e << " : Obs[Data] = gather(w_" << k.name << ", i" << j << ")\n";
      terms.push_back(e);
      if (k.parent >= 0 && coin()) {
        const auto& p = axes_[k.parent];
        const std::string r = "r" + std::to_string(j);
        body_ << "let " << r << " : Idx[" << p.name << ", Data] = reindex("
              << map_name(k.parent, idx_axis[j]) << ", i" << j << ")\n";
        body_ << "let f" << j << " : Obs[Data] = gather(w_" << p.name << ", " << r << ")\n";
        terms.push_back("0.5 * f" + std::to_string(j));
      }
      if (coin()) body_ << "check gather(w_" << k.name << ", i" << j << ") : Obs[Data]\n";
    }
    if (coin()) {
      decl_ << "vec x : Data" << source("x", normals(n_obs)) << "\n";
      terms.push_back("-0.3 * x");
    }
    decl_ << "vec y : Data" << source("y", normals(n_obs)) << "\n";

    body_ << "let mu : Obs[Data] = ";
    for (std::size_t t = 0; t < terms.size(); ++t) body_ << (t ? " + " : "") << terms[t];
    body_ << "\nobserve y ~ normal(mu, 1.5)\n";

    FuzzProgram out;
    out.text = "# generated\n" + decl_.str() + "\n" + body_.str();
    out.files = std::move(files_);
    out.depth = depth_;
    return out;
  }

 private:
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  std::vector<double> normals(std::size_t n) {
    std::normal_distribution<double> dist;
    std::vector<double> out(n);
    for (auto& v : out) v = dist(rng_);
    return out;
  }

  std::string map_name(int p, int c) const { return "m_" + axes_[p].name + "_" + axes_[c].name; }

  void build_axes() {
    // At least two levels, so every program has a map and a lift to mutate.
    depth_ = options_.max_depth < 2 ? 1 : 2 + below(options_.max_depth - 1);
    std::vector<std::vector<int>> levels(depth_);
    for (std::size_t l = 0; l < depth_; ++l) {
      const std::size_t count = 1 + below(2);
      for (std::size_t i = 0; i < count; ++i) {
        AxisInfo a;
        a.name = "K" + std::to_string(axes_.size());
        a.size = 1 + below(8);
        a.level = l;
        if (l > 0) a.parent = levels[l - 1][below(levels[l - 1].size())];
        levels[l].push_back(static_cast<int>(axes_.size()));
        axes_.push_back(a);
      }
    }
    // A second parent from a fresh root keeps every lift path unique.
    if (depth_ > 1 && coin()) {
      std::vector<int> children;
      for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].parent >= 0) children.push_back(static_cast<int>(i));
      }
      const int child = children[below(children.size())];
      AxisInfo root;
      root.name = "K" + std::to_string(axes_.size());
      root.size = 1 + below(8);
      axes_[child].extra_parent = static_cast<int>(axes_.size());
      axes_.push_back(root);
    }
  }

  template <typename T>
  std::string source(const std::string& name, const std::vector<T>& values) {
    std::ostringstream s;
    if (options_.data_files) {
      std::ostringstream csv;
      csv << name << "\n";
      for (const auto& v : values) csv << format(v) << "\n";
      files_[name + ".csv"] = csv.str();
      s << " from \"" << name << ".csv\"";
      return s.str();
    }
    s << " = [";
    for (std::size_t i = 0; i < values.size(); ++i) s << (i ? ", " : "") << format(values[i]);
    s << "]";
    return s.str();
  }

  static std::string format(std::size_t v) { return std::to_string(v); }
  static std::string format(double v) {
    std::string s = geist::runtime::format_double(v);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
  }

  std::mt19937_64 rng_;
  FuzzOptions options_;
  std::vector<AxisInfo> axes_;
  std::size_t depth_ = 0;
  std::ostringstream decl_, body_;
  std::map<std::string, std::string> files_;
};

}  // namespace

FuzzProgram generate_program(std::uint64_t seed, const FuzzOptions& options) {
  return Generator(seed, options).run();
}

// ---------------------------------------------------------------------------

std::vector<double> loop_gather(const std::vector<double>& vec,
                                const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  for (std::size_t d = 0; d < idx.size(); ++d) out.push_back(vec.at(idx[d]));
  return out;
}

std::vector<double> loop_lift(const std::vector<std::size_t>& map,
                              const std::vector<double>& vec) {
  std::vector<double> out;
  for (std::size_t l = 0; l < map.size(); ++l) out.push_back(vec.at(map[l]));
  return out;
}

std::vector<std::size_t> loop_reindex(const std::vector<std::size_t>& map,
                                      const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < idx.size(); ++d) out.push_back(map.at(idx[d]));
  return out;
}

double normal_term(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * std::log(2.0 * M_PI) - std::log(sigma) - 0.5 * z * z;
}

std::size_t brute_force_paths(const std::vector<std::pair<int, int>>& edges, int from, int to) {
  std::function<std::size_t(int, int)> walk = [&](int node, int budget) -> std::size_t {
    if (node == to) return 1;
    if (budget == 0) return 0;
    std::size_t n = 0;
    for (const auto& [a, b] : edges) {
      if (a == node) n += walk(b, budget - 1);
    }
    return n;
  };
  // An acyclic path visits each edge at most once.
  return walk(from, static_cast<int>(edges.size()));
}

bool brute_force_has_cycle(const std::vector<std::pair<int, int>>& edges, int nodes) {
  for (int start = 0; start < nodes; ++start) {
    std::vector<int> stack{start};
    std::vector<bool> seen(nodes, false);
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges) {
        if (a != n) continue;
        if (b == start) return true;
        if (!seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
      }
    }
  }
  return false;
}

}  // namespace testsupport
