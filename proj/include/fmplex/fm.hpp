#pragma once

#include <fmplex/outcome.hpp>
#include <fmplex/projection.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace fmplex {

struct FmStep {
  std::size_t var;
  std::size_t rows_before;
  std::size_t rows_after;
  std::uint64_t cumulative;  ///< rows generated up to and including this step
};

struct FmTrace {
  std::vector<FmStep> steps;

  [[nodiscard]] std::uint64_t total_generated() const { return steps.empty() ? 0 : steps.back().cumulative; }
};

struct FmOptions {
  std::uint64_t max_rows = default_max_rows;
};

class FmBudgetExceeded : public BudgetExceeded {
 public:
  FmBudgetExceeded(const std::string& what, Stats stats, FmTrace trace)
      : BudgetExceeded(what, std::move(stats)), trace_(std::move(trace)) {}
  [[nodiscard]] const FmTrace& trace() const { return trace_; }

 private:
  FmTrace trace_;
};

/// FM transformation matrix: one conical row per (lower, upper) pair, lower
/// index outermost, then the coefficient-zero rows.
inline StepMatrix fm_matrix(const LinearSystem& sys, std::size_t j) {
  const IndexSets sets = index_sets(sys, j);
  StepMatrix f;
  f.reserve(sets.lower.size() * sets.upper.size() + sets.none.size());
  for (std::size_t l : sets.lower)
    for (std::size_t u : sets.upper)
      f.push_back({{l, Rational(-1 / sys.coeff(l, j))}, {u, Rational(1 / sys.coeff(u, j))}});
  for (std::size_t k : sets.none) f.push_back({{k, Rational(1)}});
  return f;
}

inline LinearSystem fm_eliminate(const LinearSystem& sys, std::size_t j) {
  return apply_projection(sys, fm_matrix(sys, j), 0);
}

namespace detail {

inline void fm_step(LinearSystem& sys, std::size_t j, FmTrace& trace, const FmOptions& opts) {
  const IndexSets sets = index_sets(sys, j);
  const std::uint64_t produced = static_cast<std::uint64_t>(sets.lower.size()) * sets.upper.size() + sets.none.size();
  const std::uint64_t before = trace.total_generated();
  if (before + produced > opts.max_rows) {
    Stats stats;
    stats.rows_generated = before;
    stats.max_depth = trace.steps.size();
    throw FmBudgetExceeded("Fourier-Motzkin row budget exceeded", stats, trace);
  }
  const std::size_t rows_before = sys.size();
  sys = fm_eliminate(sys, j);
  trace.steps.push_back({j, rows_before, sys.size(), before + sys.size()});
}

}  // namespace detail

/// Eliminates `vars` in the given order.
inline std::pair<LinearSystem, FmTrace> fm_qe(const LinearSystem& sys, std::span<const std::size_t> vars,
                                              const FmOptions& opts = {}) {
  std::pair<LinearSystem, FmTrace> out{sys, {}};
  for (std::size_t j : vars) detail::fm_step(out.first, j, out.second, opts);
  return out;
}

/// Variable with the fewest generated pairs |I-| * |I+|, ties to the lowest index.
inline std::optional<std::size_t> fm_next_variable(const LinearSystem& sys) {
  std::optional<std::size_t> best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t j = 0; j < sys.nvars(); ++j) {
    if (sys.column_is_zero(j)) continue;
    const IndexSets sets = index_sets(sys, j);
    std::uint64_t cost = static_cast<std::uint64_t>(sets.lower.size()) * sets.upper.size();
    if (cost < best_cost) {
      best_cost = cost;
      best = j;
    }
  }
  return best;
}

/// Satisfiability by full elimination. On SAT the model is rebuilt in reverse
/// elimination order, taking the largest lower bound (else the smallest upper
/// bound, else zero). On UNSAT the provenance of a trivially false row is the
/// certificate.
inline std::pair<SolveOutcome, Stats> fm_solve(const LinearSystem& sys, const FmOptions& opts = {}) {
  std::vector<LinearSystem> history;
  std::vector<std::size_t> order;
  LinearSystem cur = sys;
  FmTrace trace;
  auto stats = [&] {
    Stats s;
    s.rows_generated = trace.total_generated();
    s.max_depth = trace.steps.size();
    return s;
  };
  auto conflict = [&]() -> std::optional<Unsat> {
    for (const auto& r : cur.rows())
      if (r.constraint.is_conflict()) return Unsat{support(r.provenance), FarkasCertificate{r.provenance}};
    return std::nullopt;
  };
  while (true) {
    if (auto u = conflict()) return {std::move(*u), stats()};
    auto j = fm_next_variable(cur);
    if (!j) break;
    history.push_back(cur);
    order.push_back(*j);
    detail::fm_step(cur, *j, trace, opts);
  }

  Assignment alpha;
  for (std::size_t k = history.size(); k-- > 0;) {
    const LinearSystem& parent = history[k];
    const std::size_t j = order[k];
    std::optional<DeltaScalar> lower;
    std::optional<DeltaScalar> upper;
    for (const auto& r : parent.rows()) {
      if (is_zero(r.coeffs()[j])) continue;
      SymbolicBound bnd = bound_rewrite(r.constraint, j);
      for (std::size_t v = 0; v < bnd.coeffs.size(); ++v)
        if (!is_zero(bnd.coeffs[v]) && alpha.find(v) == nullptr) alpha.set(v, DeltaScalar());
      DeltaScalar value = evaluate_bound(bnd, alpha);
      if (bnd.kind == BoundKind::Lower) {
        if (!lower || *lower < value) lower = value;
      } else if (!upper || value < *upper) {
        upper = value;
      }
    }
    alpha.set(j, lower ? *lower : (upper ? *upper : DeltaScalar()));
  }
  for (std::size_t v = 0; v < sys.nvars(); ++v)
    if (alpha.find(v) == nullptr) alpha.set(v, DeltaScalar());
  return {Sat{std::move(alpha)}, stats()};
}

}  // namespace fmplex
