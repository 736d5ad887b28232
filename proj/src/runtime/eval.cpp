#include "geist/runtime/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "geist/check/checker.hpp"
#include "geist/error.hpp"
#include "geist/runtime/data_io.hpp"

namespace geist::runtime {

using lang::Expr;
using lang::ExprKind;
using lang::SourceSpan;

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

/// Raw cells of a data source with enough provenance for error messages.
struct RawData {
  std::vector<std::string> cells;
  std::vector<SourceSpan> spans;  // per cell
  std::string origin;             // file name or "inline data"
  std::vector<std::string> where; // per cell: "file.csv:4" or "inline data, position 2"
};

RawData read_source(const lang::DataSource& src, const std::filesystem::path& base_dir) {
  RawData raw;
  if (src.is_inline()) {
    raw.origin = "inline data";
    const auto& values = src.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      raw.cells.push_back(lang::format_number(values[i].value, values[i].integral));
      raw.spans.push_back(values[i].span);
      raw.where.push_back("inline data, position " + std::to_string(i + 1));
    }
    return raw;
  }
  const std::filesystem::path path = base_dir / src.path();
  Column col;
  try {
    col = read_column(path);
  } catch (const DataFileError& e) {
    throw EvalError("E206", src.span, e.what());
  }
  raw.origin = src.path();
  for (std::size_t i = 0; i < col.cells.size(); ++i) {
    raw.cells.push_back(col.cells[i]);
    raw.spans.push_back(src.span);
    raw.where.push_back(src.path() + ":" + std::to_string(col.lines[i]));
  }
  return raw;
}

std::vector<Index> parse_indices(const RawData& raw) {
  std::vector<Index> out;
  out.reserve(raw.cells.size());
  for (std::size_t i = 0; i < raw.cells.size(); ++i) {
    const std::string& cell = raw.cells[i];
    unsigned long long v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw EvalError("E206", raw.spans[i],
                      raw.where[i] + ": " + quote(cell) + " is not a non-negative integer index");
    }
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

std::vector<double> parse_reals(const RawData& raw) {
  std::vector<double> out;
  out.reserve(raw.cells.size());
  for (std::size_t i = 0; i < raw.cells.size(); ++i) {
    const std::string& cell = raw.cells[i];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw EvalError("E206", raw.spans[i],
                      raw.where[i] + ": " + quote(cell) + " is not a finite number");
    }
    out.push_back(v);
  }
  return out;
}

void require_length(const RawData& raw, std::size_t want, const SourceSpan& span,
                    const std::string& what) {
  if (raw.cells.size() != want) {
    throw EvalError("E202", span,
                    raw.origin + ": " + what + " expects " + std::to_string(want) +
                        " entries, found " + std::to_string(raw.cells.size()));
  }
}

void require_bounds(const RawData& raw, std::span<const Index> entries, std::size_t bound,
                    const std::string& axis) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= bound) {
      throw EvalError("E201", raw.spans[i],
                      raw.where[i] + ": index " + std::to_string(entries[i]) +
                          " is out of range [0, " + std::to_string(bound) + ") for axis " +
                          quote(axis));
    }
  }
}

std::span<const double> real_values(const Value& v) {
  if (const auto* t = std::get_if<TypedVec>(&v)) return t->values();
  if (const auto* o = std::get_if<ObsArray>(&v)) return o->values();
  return {};
}

bool is_real_array(const Value& v) {
  return std::holds_alternative<TypedVec>(v) || std::holds_alternative<ObsArray>(v);
}

class Evaluator {
 public:
  Evaluator(std::filesystem::path base_dir, EvalMode mode)
      : base_dir_(std::move(base_dir)), mode_(mode) {}

  EvalReport run(const lang::ModelProgram& program) {
    for (const auto& item : program.items) {
      if (const auto* decl = std::get_if<lang::Decl>(&item)) load(*decl);
    }
    for (auto& [name, registry] : env_.registries) registry.freeze();
    for (const auto& item : program.items) {
      if (const auto* stmt = std::get_if<lang::Stmt>(&item)) execute(*stmt);
    }
    kernels::CompensatedSum total;
    for (const auto& o : report_.observes) total.add(o.loglik);
    report_.total_loglik = total.value();
    return std::move(report_);
  }

 private:
  const AxisTag& axis(const lang::Ident& name) {
    auto it = env_.axes.find(name.text);
    if (it == env_.axes.end()) {
      throw EvalError("E209", name.span, "unknown axis " + quote(name.text));
    }
    return it->second;
  }

  const DatasetTag& dataset(const lang::Ident& name) {
    auto it = env_.datasets.find(name.text);
    if (it == env_.datasets.end()) {
      throw EvalError("E209", name.span, "unknown dataset " + quote(name.text));
    }
    return it->second;
  }

  void load(const lang::Decl& decl) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          try {
            if constexpr (std::is_same_v<T, lang::DatasetDecl>) {
              DatasetTag tag(d.name.text, static_cast<std::size_t>(std::max(0.0, d.obs_count.value)));
              env_.datasets.insert_or_assign(d.name.text, tag);
              env_.dataset_order.push_back(d.name.text);
              env_.registries.insert_or_assign(d.name.text, MapRegistry(tag));
            } else if constexpr (std::is_same_v<T, lang::AxisDecl>) {
              env_.axes.insert_or_assign(
                  d.name.text,
                  AxisTag(d.name.text, static_cast<std::size_t>(std::max(0.0, d.size.value))));
            } else if constexpr (std::is_same_v<T, lang::MapDecl>) {
              load_map(d);
            } else if constexpr (std::is_same_v<T, lang::IdxDecl>) {
              load_idx(d);
            } else {
              load_vec(d);
            }
          } catch (const Error& e) {
            throw EvalError(e.kind() == ErrorKind::DuplicateRegistration ? "E203"
                            : e.kind() == ErrorKind::CycleError          ? "E204"
                                                                         : "E202",
                            decl.span, e.what());
          }
        },
        decl.node);
  }

  void load_map(const lang::MapDecl& d) {
    const AxisTag& parent = axis(d.parent);
    const AxisTag& child = axis(d.child);
    const DatasetTag& ds = dataset(d.dataset);
    const RawData raw = read_source(d.source, base_dir_);
    require_length(raw, child.size(), d.source.span,
                   "map " + quote(d.name.text) + " (one entry per " + child.name() + " level)");
    std::vector<Index> entries = parse_indices(raw);
    require_bounds(raw, entries, parent.size(), parent.name());
    AxisMap map(parent, child, ds, entries);
    env_.registries.at(ds.name()).register_map(parent, child, std::move(entries));
    env_.bindings.insert_or_assign(d.name.text, std::move(map));
  }

  void load_idx(const lang::IdxDecl& d) {
    const AxisTag& source_axis = axis(d.axis);
    const DatasetTag& ds = dataset(d.dataset);
    const RawData raw = read_source(d.source, base_dir_);
    require_length(raw, ds.obs_count(), d.source.span,
                   "idx " + quote(d.name.text) + " (one entry per " + ds.name() + " row)");
    std::vector<Index> indices = parse_indices(raw);
    require_bounds(raw, indices, source_axis.size(), source_axis.name());
    env_.bindings.insert_or_assign(d.name.text, IndexArray(source_axis, ds, std::move(indices)));
  }

  void load_vec(const lang::VecDecl& d) {
    const bool over_axis = env_.axes.contains(d.domain.text);
    if (!over_axis && !env_.datasets.contains(d.domain.text)) {
      throw EvalError("E209", d.domain.span, "unknown axis or dataset " + quote(d.domain.text));
    }
    if (!d.source) {
      env_.bindings.erase(d.name.text);
      env_.symbolic[d.name.text] = d.domain.text;
      return;
    }
    env_.symbolic.erase(d.name.text);
    const RawData raw = read_source(*d.source, base_dir_);
    if (over_axis) {
      const AxisTag& tag = env_.axes.at(d.domain.text);
      require_length(raw, tag.size(), d.source->span,
                     "vec " + quote(d.name.text) + " over axis " + quote(tag.name()));
      env_.bindings.insert_or_assign(d.name.text, TypedVec(tag, parse_reals(raw)));
    } else {
      const DatasetTag& tag = env_.datasets.at(d.domain.text);
      require_length(raw, tag.obs_count(), d.source->span,
                     "vec " + quote(d.name.text) + " over dataset " + quote(tag.name()));
      env_.bindings.insert_or_assign(d.name.text, ObsArray(tag, parse_reals(raw)));
    }
  }

  void execute(const lang::Stmt& stmt) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, lang::LetStmt>) {
            Value v = eval(s.value);
            LetSummary summary{s.name.text, type_name(v), 1, {}};
            if (const auto* d = std::get_if<double>(&v)) {
              summary.values = {*d};
            } else if (is_real_array(v)) {
              const auto values = real_values(v);
              summary.values.assign(values.begin(), values.end());
              summary.length = values.size();
            } else if (const auto* i = std::get_if<IndexArray>(&v)) {
              summary.length = i->size();
              for (Index x : i->indices()) summary.values.push_back(static_cast<double>(x));
            }
            report_.lets.push_back(std::move(summary));
            env_.symbolic.erase(s.name.text);
            env_.bindings.insert_or_assign(s.name.text, std::move(v));
          } else if constexpr (std::is_same_v<T, lang::ObserveStmt>) {
            observe(s);
          }
        },
        stmt.node);
  }

  const Value& lookup(const lang::Ident& name) {
    if (auto sym = env_.symbolic.find(name.text); sym != env_.symbolic.end()) {
      throw EvalError("E207", name.span,
                      quote(name.text) + " is a symbolic parameter over " + quote(sym->second) +
                          " with no data source");
    }
    auto it = env_.bindings.find(name.text);
    if (it == env_.bindings.end()) {
      throw EvalError("E209", name.span, "unknown name " + quote(name.text));
    }
    return it->second;
  }

  void observe(const lang::ObserveStmt& s) {
    const Value observed = lookup(s.data);
    const Value mean = eval(s.mean);
    const Value sigma_v = eval(s.sigma);
    const auto* sigma = std::get_if<double>(&sigma_v);
    if (sigma == nullptr) {
      throw EvalError(mode_ == EvalMode::Checked ? "E209" : "E208", s.sigma.span,
                      "sigma must be a scalar, got " + type_name(sigma_v));
    }
    if (!(*sigma > 0.0) || !std::isfinite(*sigma)) {
      throw EvalError("E210", s.sigma.span,
                      "sigma must be positive and finite, got " + format_double(*sigma));
    }
    if (!is_real_array(observed)) {
      throw EvalError(mode_ == EvalMode::Checked ? "E209" : "E208", s.data.span,
                      quote(s.data.text) + " is not observable data");
    }
    // A scalar mean broadcasts over the observed values.
    Value mean_full = mean;
    if (const auto* m = std::get_if<double>(&mean)) {
      std::vector<double> filled(real_values(observed).size(), *m);
      if (const auto* t = std::get_if<TypedVec>(&observed)) {
        mean_full = TypedVec(t->axis(), std::move(filled));
      } else {
        mean_full = ObsArray(std::get<ObsArray>(observed).dataset(), std::move(filled));
      }
    }
    double loglik = 0.0;
    if (mode_ == EvalMode::Checked) {
      try {
        if (const auto* t = std::get_if<TypedVec>(&observed)) {
          const auto* m = std::get_if<TypedVec>(&mean_full);
          if (m == nullptr) throw Error(ErrorKind::AxisMismatch, "mean is not a Vec");
          loglik = gaussian_loglik(*t, *m, *sigma);
        } else {
          const auto* m = std::get_if<ObsArray>(&mean_full);
          if (m == nullptr) throw Error(ErrorKind::DatasetMismatch, "mean is not an Obs");
          loglik = gaussian_loglik(std::get<ObsArray>(observed), *m, *sigma);
        }
      } catch (const Error& e) {
        throw EvalError("E209", s.mean.span, e.what());
      }
    } else {
      if (!is_real_array(mean_full)) {
        throw EvalError("E208", s.mean.span, "mean is not a real-valued array");
      }
      const auto obs = real_values(observed);
      const auto mu = real_values(mean_full);
      if (obs.size() != mu.size()) {
        throw EvalError("E208", s.mean.span,
                        "length mismatch: observed " + std::to_string(obs.size()) +
                            " values, mean has " + std::to_string(mu.size()));
      }
      loglik = kernels::parallel::normal_loglik(obs, mu, *sigma);
    }
    report_.observes.push_back(ObserveResult{s.data.text, loglik});
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Number: return e.number;
      case ExprKind::Name: return lookup(e.name);
      case ExprKind::Gather: return eval_gather(e);
      case ExprKind::Lift: return eval_lift(e);
      case ExprKind::Reindex: return eval_reindex(e);
      case ExprKind::BinOp: return eval_binop(e);
    }
    throw EvalError("E209", e.span, "unsupported expression");
  }

  [[noreturn]] void kind_error(const Expr& e, const std::string& message) {
    throw EvalError(mode_ == EvalMode::Checked ? "E209" : "E208", e.span, message);
  }

  Value eval_gather(const Expr& e) {
    const Value vec = eval(e.args[0]);
    const Value idx = eval(e.args[1]);
    const auto* index = std::get_if<IndexArray>(&idx);
    if (index == nullptr) kind_error(e.args[1], "gather index is " + type_name(idx));
    if (mode_ == EvalMode::Checked) {
      const auto* v = std::get_if<TypedVec>(&vec);
      if (v == nullptr) kind_error(e.args[0], "gather source is " + type_name(vec));
      try {
        return gather(*v, *index);
      } catch (const Error& err) {
        throw EvalError("E209", e.span, err.what());
      }
    }
    if (!is_real_array(vec)) kind_error(e.args[0], "gather source is " + type_name(vec));
    const auto src = real_values(vec);
    if (kernels::parallel::index_bound(index->indices()) > src.size()) {
      throw EvalError("E208", e.args[1].span,
                      "gather index out of bounds: " + type_name(idx) + " indexes past the " +
                          std::to_string(src.size()) + " entries of " + type_name(vec));
    }
    std::vector<double> out(index->size());
    kernels::parallel::take(src, index->indices(), out);
    return ObsArray(index->dataset(), std::move(out));
  }

  Value eval_lift(const Expr& e) {
    const Value vec = eval(e.args[0]);
    const auto* v = std::get_if<TypedVec>(&vec);
    if (v == nullptr) kind_error(e.args[0], "lift source is " + type_name(vec));
    const AxisTag& to = axis(e.name);
    std::map<std::string, AxisGraph> graphs;
    for (const auto& [name, registry] : env_.registries) graphs.emplace(name, registry.graph());
    const auto resolution =
        check::resolve_lift(graphs, env_.dataset_order, v->axis().name(), to.name());
    using Status = check::LiftResolution::Status;
    if (resolution.status == Status::Identity) return *v;
    if (resolution.status != Status::Unique) {
      throw EvalError("E209", e.name.span,
                      std::string(resolution.status == Status::NoPath ? "no" : "ambiguous") +
                          " registered lift path from " + quote(v->axis().name()) + " to " +
                          quote(to.name()));
    }
    try {
      return env_.registries.at(resolution.dataset).auto_lift(*v, to);
    } catch (const Error& err) {
      throw EvalError("E209", e.span, err.what());
    }
  }

  Value eval_reindex(const Expr& e) {
    const Value map_v = eval(e.args[0]);
    const Value idx_v = eval(e.args[1]);
    const auto* map = std::get_if<AxisMap>(&map_v);
    const auto* idx = std::get_if<IndexArray>(&idx_v);
    if (map == nullptr) kind_error(e.args[0], "reindex map is " + type_name(map_v));
    if (idx == nullptr) kind_error(e.args[1], "reindex index is " + type_name(idx_v));
    if (mode_ == EvalMode::Checked) {
      try {
        return reindex(*map, *idx);
      } catch (const Error& err) {
        throw EvalError("E209", e.span, err.what());
      }
    }
    if (kernels::parallel::index_bound(idx->indices()) > map->entries().size()) {
      throw EvalError("E208", e.args[1].span,
                      "reindex index out of bounds: " + type_name(idx_v) + " indexes past the " +
                          std::to_string(map->entries().size()) + " entries of " +
                          type_name(map_v));
    }
    std::vector<Index> out(idx->size());
    kernels::parallel::take(map->entries(), idx->indices(), out);
    return IndexArray(map->parent_axis(), idx->dataset(), std::move(out));
  }

  Value eval_binop(const Expr& e) {
    const Value lhs = eval(e.args[0]);
    const Value rhs = eval(e.args[1]);
    const bool add = e.op == lang::BinOpKind::Add;
    const auto* ls = std::get_if<double>(&lhs);
    const auto* rs = std::get_if<double>(&rhs);
    if (ls && rs) return add ? *ls + *rs : *ls * *rs;
    for (std::size_t i = 0; i < 2; ++i) {
      const Value& v = i == 0 ? lhs : rhs;
      if (!std::holds_alternative<double>(v) && !is_real_array(v)) {
        kind_error(e.args[i], "unsupported operand " + type_name(v));
      }
    }
    if (ls || rs) {
      const Value& array = ls ? rhs : lhs;
      const double s = ls ? *ls : *rs;
      const auto src = real_values(array);
      std::vector<double> out(src.size());
      if (add) {
        kernels::parallel::add_scalar(src, s, out);
      } else {
        kernels::parallel::multiply_scalar(src, s, out);
      }
      return retag(array, std::move(out));
    }
    if (mode_ == EvalMode::Checked) {
      const bool same_tag = std::visit(
          [](const auto& a, const auto& b) {
            using A = std::decay_t<decltype(a)>;
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<A, TypedVec> && std::is_same_v<B, TypedVec>) {
              return a.axis() == b.axis();
            } else if constexpr (std::is_same_v<A, ObsArray> && std::is_same_v<B, ObsArray>) {
              return a.dataset() == b.dataset();
            } else {
              return false;
            }
          },
          lhs, rhs);
      if (!same_tag) {
        throw EvalError("E209", e.span,
                        "operands " + type_name(lhs) + " and " + type_name(rhs) +
                            " are over different axes");
      }
    }
    const auto a = real_values(lhs);
    const auto b = real_values(rhs);
    if (a.size() != b.size()) {
      throw EvalError("E208", e.span,
                      "length mismatch: " + type_name(lhs) + " has " + std::to_string(a.size()) +
                          " values, " + type_name(rhs) + " has " + std::to_string(b.size()));
    }
    std::vector<double> out(a.size());
    if (add) {
      kernels::parallel::add(a, b, out);
    } else {
      kernels::parallel::multiply(a, b, out);
    }
    // Unchecked arithmetic keeps the observation tag if either side has one.
    if (std::holds_alternative<ObsArray>(rhs) && !std::holds_alternative<ObsArray>(lhs)) {
      return retag(rhs, std::move(out));
    }
    return retag(lhs, std::move(out));
  }

  static Value retag(const Value& like, std::vector<double> values) {
    if (const auto* t = std::get_if<TypedVec>(&like)) return TypedVec(t->axis(), std::move(values));
    return ObsArray(std::get<ObsArray>(like).dataset(), std::move(values));
  }

  std::filesystem::path base_dir_;
  EvalMode mode_;
  EvalEnv env_;
  EvalReport report_;
};

}  // namespace

bool EvalError::is_load_error() const {
  return code_ == "E201" || code_ == "E202" || code_ == "E206";
}

bool EvalError::is_shape_error() const {
  return code_ == "E201" || code_ == "E202" || code_ == "E208";
}

std::string type_name(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return "Scalar";
        } else {
          return geist::type_name(x);
        }
      },
      v);
}

EvalReport evaluate(const lang::ModelProgram& program, const std::filesystem::path& base_dir,
                    EvalMode mode) {
  return Evaluator(base_dir, mode).run(program);
}

std::string format_report(const EvalReport& report, bool show_values) {
  std::string out;
  for (const auto& let : report.lets) {
    out += "let " + let.name + " : " + let.type;
    if (let.type == "Scalar") {
      out += " = " + format_double(let.values.empty() ? 0.0 : let.values.front());
    } else {
      out += " (length " + std::to_string(let.length) + ")";
      if (show_values) {
        out += " = [";
        for (std::size_t i = 0; i < let.values.size(); ++i) {
          if (i > 0) out += ", ";
          out += format_double(let.values[i]);
        }
        out += "]";
      }
    }
    out += "\n";
  }
  for (const auto& o : report.observes) {
    out += "observe " + o.name + " : loglik = " + format_double(o.loglik) + "\n";
  }
  out += "total loglik = " + format_double(report.total_loglik) + "\n";
  return out;
}

}  // namespace geist::runtime
