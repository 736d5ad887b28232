#include "geist/runtime/mutate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "geist/check/checker.hpp"
#include "geist/lang/parser.hpp"
#include "geist/runtime/data_io.hpp"
#include "geist/runtime/eval.hpp"
#include "geist/runtime/rng.hpp"

namespace geist::runtime {

using lang::Expr;
using lang::ExprKind;
using lang::ModelProgram;

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::IdxSwap: return "idx-swap";
    case MutationKind::LiftTarget: return "lift-target";
    case MutationKind::MapReverse: return "map-reverse";
    case MutationKind::AnnotationRebind: return "annotation-rebind";
  }
  return "?";
}

double MutationReport::static_detection_rate() const {
  if (total_mutants == 0) return 1.0;
  return static_cast<double>(statically_caught) / static_cast<double>(total_mutants);
}

namespace {

// Every top-level expression of every statement, in source order.
template <typename F>
void for_each_stmt_expr(ModelProgram& program, F&& f) {
  for (auto& item : program.items) {
    auto* stmt = std::get_if<lang::Stmt>(&item);
    if (stmt == nullptr) continue;
    std::visit(
        [&](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, lang::ObserveStmt>) {
            f(s.mean);
            f(s.sigma);
          } else {
            f(s.value);
          }
        },
        stmt->node);
  }
}

std::string at(const lang::SourceSpan& span) {
  return std::to_string(span.line) + ":" + std::to_string(span.column);
}

std::string ann_text(const lang::TypeAnn& ann) { return lang::pretty_print(ann); }

struct MapInfo {
  std::size_t item;
  std::string name, parent, child, dataset;
};

}  // namespace

ModelProgram swap_references(const ModelProgram& program, const std::string& a,
                             const std::string& b) {
  ModelProgram out = program;
  for_each_stmt_expr(out, [&](Expr& root) {
    lang::for_each_expr(root, [&](Expr& e) {
      if (e.kind != ExprKind::Name) return;
      if (e.name.text == a) {
        e.name.text = b;
      } else if (e.name.text == b) {
        e.name.text = a;
      }
    });
  });
  return out;
}

ModelProgram replace_gather_index(const ModelProgram& program, const std::string& from,
                                  const std::string& to) {
  ModelProgram out = program;
  for_each_stmt_expr(out, [&](Expr& root) {
    lang::for_each_expr(root, [&](Expr& e) {
      if (e.kind != ExprKind::Gather || e.args.size() != 2) return;
      Expr& idx = e.args[1];
      if (idx.kind == ExprKind::Name && idx.name.text == from) idx.name.text = to;
    });
  });
  return out;
}

std::vector<Mutant> enumerate_mutants(const ModelProgram& program) {
  check::Checker checker;
  checker.check_program(program);
  const check::CheckContext& ctx = checker.context();

  std::vector<Mutant> out;

  // Declared idx arrays that some statement reads, in declaration order.
  std::vector<std::pair<std::string, check::SemType>> used_idx;
  std::vector<MapInfo> maps;
  for (std::size_t i = 0; i < program.items.size(); ++i) {
    const auto* decl = std::get_if<lang::Decl>(&program.items[i]);
    if (decl == nullptr) continue;
    if (const auto* d = std::get_if<lang::IdxDecl>(&decl->node)) {
      auto it = ctx.bindings.find(d->name.text);
      if (it != ctx.bindings.end() && it->second.used &&
          it->second.type.kind == check::SemType::Kind::Idx) {
        used_idx.emplace_back(d->name.text, it->second.type);
      }
    } else if (const auto* m = std::get_if<lang::MapDecl>(&decl->node)) {
      maps.push_back({i, m->name.text, m->parent.text, m->child.text, m->dataset.text});
    }
  }

  for (std::size_t i = 0; i < used_idx.size(); ++i) {
    for (std::size_t j = i + 1; j < used_idx.size(); ++j) {
      const auto& [a, ta] = used_idx[i];
      const auto& [b, tb] = used_idx[j];
      if (ta == tb) continue;  // same axis and dataset: not an axis-semantic change
      out.push_back({MutationKind::IdxSwap, "swap " + a + " and " + b,
                     swap_references(program, a, b)});
    }
  }

  // Lifts, by pre-order position.
  std::vector<std::pair<std::string, lang::SourceSpan>> lifts;
  {
    ModelProgram scratch = program;
    for_each_stmt_expr(scratch, [&](Expr& root) {
      lang::for_each_expr(root, [&](Expr& e) {
        if (e.kind == ExprKind::Lift) lifts.emplace_back(e.name.text, e.span);
      });
    });
  }
  for (std::size_t k = 0; k < lifts.size(); ++k) {
    for (const auto& axis : ctx.axis_order) {
      if (axis == lifts[k].first) continue;
      ModelProgram mutated = program;
      std::size_t seen = 0;
      for_each_stmt_expr(mutated, [&](Expr& root) {
        lang::for_each_expr(root, [&](Expr& e) {
          if (e.kind == ExprKind::Lift && seen++ == k) e.name.text = axis;
        });
      });
      out.push_back({MutationKind::LiftTarget,
                     "lift at " + at(lifts[k].second) + " retargeted " + lifts[k].first + " -> " +
                         axis,
                     std::move(mutated)});
    }
  }

  // Maps that are reindexed directly or lie on a resolved lift path.
  std::set<std::string> used_maps;
  for (const auto& m : maps) {
    auto it = ctx.bindings.find(m.name);
    if (it != ctx.bindings.end() && it->second.used) used_maps.insert(m.name);
  }
  for (const auto& lift : ctx.lifts) {
    auto reg = ctx.registries.find(lift.dataset);
    if (reg == ctx.registries.end()) continue;
    auto path = reg->second.unique_path(lift.from, lift.to);
    if (!path) continue;
    for (std::size_t s = 0; s + 1 < path->size(); ++s) {
      for (const auto& m : maps) {
        if (m.dataset == lift.dataset && m.parent == (*path)[s] && m.child == (*path)[s + 1]) {
          used_maps.insert(m.name);
        }
      }
    }
  }
  for (const auto& m : maps) {
    if (!used_maps.contains(m.name)) continue;
    ModelProgram mutated = program;
    auto& decl = std::get<lang::MapDecl>(std::get<lang::Decl>(mutated.items[m.item]).node);
    std::swap(decl.parent, decl.child);
    out.push_back({MutationKind::MapReverse,
                   "map " + m.name + " reversed to " + m.child + " -> " + m.parent,
                   std::move(mutated)});
  }

  // Vec/Idx annotations on lets and checks, moved to every other axis.
  for (std::size_t i = 0; i < program.items.size(); ++i) {
    const auto* stmt = std::get_if<lang::Stmt>(&program.items[i]);
    if (stmt == nullptr) continue;
    const lang::TypeAnn* ann = nullptr;
    std::string subject;
    if (const auto* let = std::get_if<lang::LetStmt>(&stmt->node)) {
      if (let->annotation) ann = &*let->annotation;
      subject = let->name.text;
    } else if (const auto* chk = std::get_if<lang::CheckStmt>(&stmt->node)) {
      ann = &chk->annotation;
      subject = "check at " + at(stmt->span);
    }
    if (ann == nullptr) continue;
    if (ann->kind != lang::TypeAnn::Kind::Vec && ann->kind != lang::TypeAnn::Kind::Idx) continue;
    for (const auto& axis : ctx.axis_order) {
      if (axis == ann->axis.text) continue;
      ModelProgram mutated = program;
      auto& s = std::get<lang::Stmt>(mutated.items[i]);
      lang::TypeAnn* target = nullptr;
      if (auto* let = std::get_if<lang::LetStmt>(&s.node)) {
        target = &*let->annotation;
      } else {
        target = &std::get<lang::CheckStmt>(s.node).annotation;
      }
      target->axis.text = axis;
      out.push_back({MutationKind::AnnotationRebind,
                     subject + " annotated " + ann_text(*target) + " instead of " +
                         ann_text(*ann),
                     std::move(mutated)});
    }
  }
  return out;
}

ForcedOutcome force_evaluate(const ModelProgram& program, const std::filesystem::path& base_dir,
                             double baseline_loglik) {
  ForcedOutcome out;
  try {
    const EvalReport report = evaluate(program, base_dir, EvalMode::Unchecked);
    out.loglik = report.total_loglik;
    out.delta = report.total_loglik - baseline_loglik;
  } catch (const EvalError& e) {
    out.rejected = true;
    out.code = e.code();
    out.message = e.what();
  }
  return out;
}

MutationReport run_mutation(const ModelProgram& program, const std::filesystem::path& base_dir,
                            std::size_t trials, std::uint64_t seed) {
  MutationReport report;
  if (trials == 0) return report;

  std::vector<Mutant> mutants = enumerate_mutants(program);
  std::vector<std::size_t> chosen(mutants.size());
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  if (chosen.size() > trials) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(chosen));
    chosen.resize(trials);
    std::sort(chosen.begin(), chosen.end());
  }

  const double baseline = evaluate(program, base_dir, EvalMode::Checked).total_loglik;

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(chosen.size());
  std::vector<MutantRecord> records(chosen.size());
  std::vector<char> original_failed(chosen.size(), 0);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const Mutant& mutant = mutants[chosen[k]];
    MutantRecord& rec = records[k];
    rec.index = chosen[k];
    rec.kind = mutant.kind;
    rec.description = mutant.description;

    for (const auto& d : check::check_program(mutant.program)) {
      if (d.severity == check::Severity::Error) rec.codes.push_back(d.code);
    }
    rec.statically_caught = !rec.codes.empty();

    const ForcedOutcome forced = force_evaluate(mutant.program, base_dir, baseline);
    rec.shape_caught = forced.rejected;
    if (forced.rejected) {
      rec.runtime_code = forced.code;
    } else {
      rec.loglik_delta = forced.delta;
      rec.silent = !(std::fabs(forced.delta) <= kNoChangeTolerance);
    }

    original_failed[k] = check::has_errors(check::check_program(program)) ? 1 : 0;
  }

  report.total_mutants = records.size();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& rec = records[k];
    if (rec.statically_caught) ++report.statically_caught;
    if (rec.shape_caught) {
      ++report.shape_caught;
    } else if (rec.silent) {
      ++report.silent;
    } else {
      ++report.unchanged;
    }
    if (original_failed[k]) ++report.false_positives;
  }
  report.mutants = std::move(records);
  return report;
}

std::string format_report(const MutationReport& report) {
  std::ostringstream out;
  out << "mutants: " << report.total_mutants << "\n";
  out << "statically caught: " << report.statically_caught << " ("
      << format_double(100.0 * report.static_detection_rate()) << "%)\n";
  out << "shape caught: " << report.shape_caught << "\n";
  out << "silent: " << report.silent << "\n";
  out << "unchanged: " << report.unchanged << "\n";
  out << "false positives: " << report.false_positives << "\n";
  for (const auto& rec : report.mutants) {
    out << "#" << rec.index << " " << to_string(rec.kind) << ": " << rec.description << "\n";
    out << "    static: ";
    if (rec.statically_caught) {
      for (std::size_t i = 0; i < rec.codes.size(); ++i) out << (i ? "," : "") << rec.codes[i];
    } else {
      out << "missed";
    }
    out << "; unchecked eval: ";
    if (rec.shape_caught) {
      out << "rejected " << rec.runtime_code;
    } else {
      out << (rec.silent ? "silent" : "unchanged") << " delta "
          << format_double(*rec.loglik_delta);
    }
    out << "\n";
  }
  return out.str();
}

std::string format_report_json(const MutationReport& report) {
  nlohmann::ordered_json j;
  j["total_mutants"] = report.total_mutants;
  j["statically_caught"] = report.statically_caught;
  j["shape_caught"] = report.shape_caught;
  j["silent"] = report.silent;
  j["unchanged"] = report.unchanged;
  j["false_positives"] = report.false_positives;
  j["static_detection_rate"] = report.static_detection_rate();
  j["mutants"] = nlohmann::ordered_json::array();
  for (const auto& rec : report.mutants) {
    nlohmann::ordered_json m;
    m["index"] = rec.index;
    m["kind"] = std::string(to_string(rec.kind));
    m["description"] = rec.description;
    m["statically_caught"] = rec.statically_caught;
    m["codes"] = rec.codes;
    m["shape_caught"] = rec.shape_caught;
    if (rec.shape_caught) m["runtime_code"] = rec.runtime_code;
    if (rec.loglik_delta && std::isfinite(*rec.loglik_delta)) {
      m["loglik_delta"] = *rec.loglik_delta;
    } else {
      m["loglik_delta"] = nullptr;
    }
    m["silent"] = rec.silent;
    j["mutants"].push_back(std::move(m));
  }
  return j.dump(2) + "\n";
}

}  // namespace geist::runtime
