#pragma once

#include <fmplex/delta.hpp>
#include <fmplex/fm.hpp>
#include <fmplex/gauss.hpp>
#include <fmplex/search.hpp>
#include <fmplex/simplex.hpp>
#include <fmplex/smtlib/printer.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fmplex {

enum class Backend { Fm, FmplexA, FmplexB, FmplexC, Simplex };
enum class HeuristicKind { MinFanout, MinColumnLength, Random };

inline constexpr Backend all_backends[] = {Backend::Fm, Backend::FmplexA, Backend::FmplexB, Backend::FmplexC,
                                           Backend::Simplex};

inline std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Fm: return "fm";
    case Backend::FmplexA: return "fmplex-a";
    case Backend::FmplexB: return "fmplex-b";
    case Backend::FmplexC: return "fmplex-c";
    case Backend::Simplex: return "simplex";
  }
  return "";
}

inline std::optional<Backend> parse_backend(std::string_view s) {
  for (Backend b : all_backends)
    if (backend_name(b) == s) return b;
  return std::nullopt;
}

inline std::string_view heuristic_name(HeuristicKind h) {
  switch (h) {
    case HeuristicKind::MinFanout: return "mfo";
    case HeuristicKind::MinColumnLength: return "mcl";
    case HeuristicKind::Random: return "rand";
  }
  return "";
}

inline std::optional<HeuristicKind> parse_heuristic(std::string_view s) {
  for (HeuristicKind h : {HeuristicKind::MinFanout, HeuristicKind::MinColumnLength, HeuristicKind::Random})
    if (heuristic_name(h) == s) return h;
  return std::nullopt;
}

inline bool uses_heuristic(Backend b) { return b == Backend::FmplexA || b == Backend::FmplexB || b == Backend::FmplexC; }

struct RunConfig {
  Backend backend = Backend::FmplexC;
  HeuristicKind heuristic = HeuristicKind::MinFanout;
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = default_max_nodes;
  std::uint64_t max_rows = default_max_rows;
  SearchObserver* observer = nullptr;
};

/// The `<=` rows of a problem. An equality atom contributes two rows.
struct CompiledProblem {
  LinearSystem original;
  std::vector<EqualityPair> equalities;
  /// Atom index of every original row.
  std::vector<std::size_t> row_atom;

  [[nodiscard]] std::vector<std::size_t> atoms_of(const std::vector<std::size_t>& rows) const {
    std::set<std::size_t> out;
    for (std::size_t r : rows) out.insert(row_atom[r]);
    return {out.begin(), out.end()};
  }
};

inline CompiledProblem compile(const smtlib::Problem& p) {
  CompiledProblem c;
  std::vector<Constraint> rows;
  for (std::size_t k = 0; k < p.atoms.size(); ++k) {
    NormalizedAtom n = normalize(p.atoms[k].atom, k);
    if (n.equality) {
      Constraint ge;
      for (const auto& a : n.row.coeffs) ge.coeffs.emplace_back(-a);
      ge.bound = -n.row.bound;
      ge.origin = k;
      c.equalities.push_back({rows.size(), rows.size() + 1});
      rows.push_back(std::move(n.row));
      rows.push_back(std::move(ge));
      c.row_atom.insert(c.row_atom.end(), {k, k});
    } else {
      rows.push_back(std::move(n.row));
      c.row_atom.push_back(k);
    }
  }
  c.original = LinearSystem::from_constraints(p.nvars(), std::move(rows));
  return c;
}

struct RunResult {
  smtlib::Answer answer;
  Stats stats;
  /// Rational model over all variables when SAT.
  std::optional<Assignment> model;
  /// Certificate over the compiled rows when the backend produced one.
  std::optional<FarkasCertificate> certificate;
};

inline Heuristic make_heuristic(HeuristicKind kind, std::uint64_t seed) {
  switch (kind) {
    case HeuristicKind::MinFanout: return MinFanout{};
    case HeuristicKind::MinColumnLength: return MinColumnLength{};
    case HeuristicKind::Random: return RandomChoice{seed};
  }
  return MinFanout{};
}

/// Decides a compiled problem: equalities first, then the chosen backend.
/// Throws BudgetExceeded when a cap is hit.
inline RunResult run(const CompiledProblem& c, const RunConfig& cfg) {
  RunResult out;
  GaussResult gauss = gaussian_eliminate(c.original, c.equalities);
  if (gauss.conflict) {
    out.answer = smtlib::UnsatAnswer{c.atoms_of(gauss.conflict->core())};
    out.certificate = gauss.conflict;
    return out;
  }
  SolveOutcome outcome;
  switch (cfg.backend) {
    case Backend::Fm: {
      auto [o, s] = fm_solve(gauss.reduced, FmOptions{cfg.max_rows});
      outcome = std::move(o);
      out.stats = s;
      break;
    }
    case Backend::Simplex: {
      SimplexResult r = simplex_solve(gauss.reduced);
      outcome = std::move(r.outcome);
      out.stats = r.stats;
      break;
    }
    default: {
      Variant v = cfg.backend == Backend::FmplexA ? Variant::A : cfg.backend == Backend::FmplexB ? Variant::B : Variant::C;
      SearchOptions opts = SearchOptions::for_variant(v, make_heuristic(cfg.heuristic, cfg.seed));
      opts.max_nodes = cfg.max_nodes;
      opts.max_rows = cfg.max_rows;
      opts.observer = cfg.observer;
      auto [o, s] = solve(gauss.reduced, opts);
      outcome = std::move(o);
      out.stats = s;
      break;
    }
  }
  if (auto* sat = std::get_if<Sat>(&outcome)) {
    Assignment model = sat->model;
    for (std::size_t v = 0; v < c.original.nvars(); ++v)
      if (model.find(v) == nullptr) model.set(v, DeltaScalar());
    gauss.extend(model);
    Assignment concrete = instantiate_delta(model, c.original);
    smtlib::SatAnswer ans;
    for (std::size_t v = 0; v < c.original.nvars(); ++v) ans.values.push_back(concrete.find(v)->real);
    out.answer = std::move(ans);
    out.model = std::move(concrete);
  } else if (auto* u = std::get_if<Unsat>(&outcome)) {
    out.answer = smtlib::UnsatAnswer{c.atoms_of(u->core)};
    out.certificate = u->certificate;
  } else {
    throw Error("search ended in a partial result at the root");
  }
  return out;
}

inline RunResult run(const smtlib::Problem& p, const RunConfig& cfg) { return run(compile(p), cfg); }

/// Every atom holds under `values`, strict atoms strictly.
inline bool satisfies(const smtlib::Problem& p, const std::vector<Rational>& values) {
  for (const auto& a : p.atoms) {
    Rational lhs;
    for (std::size_t k = 0; k < a.atom.coeffs.size(); ++k) lhs += a.atom.coeffs[k] * values[k];
    const Rational& r = a.atom.rhs;
    bool ok = false;
    switch (a.atom.rel) {
      case Relation::Le: ok = lhs <= r; break;
      case Relation::Lt: ok = lhs < r; break;
      case Relation::Ge: ok = lhs >= r; break;
      case Relation::Gt: ok = lhs > r; break;
      case Relation::Eq: ok = lhs == r; break;
    }
    if (!ok) return false;
  }
  return true;
}

/// The atoms with the given indices as a problem of their own.
inline smtlib::Problem subproblem(const smtlib::Problem& p, const std::vector<std::size_t>& atoms) {
  smtlib::Problem out;
  out.variables = p.variables;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    smtlib::ParsedAtom a = p.atoms[atoms[k]];
    a.assert_index = k;
    out.atoms.push_back(std::move(a));
  }
  return out;
}

}  // namespace fmplex
