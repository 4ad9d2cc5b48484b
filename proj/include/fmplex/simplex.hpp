#pragma once

#include <fmplex/linalg.hpp>
#include <fmplex/outcome.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace fmplex {

/// General simplex tableau over delta-rationals.
///
/// Variables 0..n-1 are the (unbounded) problem variables, n..n+m-1 are the
/// slacks s_i = a_i . x with the single bound s_i <= b_i. A nonbasic slack
/// always sits at its bound, so the set of nonbasic slacks is exactly the
/// non-basis N of tight rows. Every basic variable has a dense row over the
/// nonbasic variables.
class Tableau {
 public:
  /// Greedy non-basis: rows are tightened in index order whenever they are
  /// independent of the rows already chosen.
  static Tableau build(const LinearSystem& sys) {
    Tableau t(sys);
    for (std::size_t i = 0; i < sys.size(); ++i) t.try_tighten(i);
    t.recompute();
    return t;
  }

  /// Tableau whose non-basis is exactly `nonbasis`.
  static Tableau with_nonbasis(const LinearSystem& sys, const std::set<std::size_t>& nonbasis) {
    Tableau t(sys);
    for (std::size_t i : nonbasis)
      if (i >= sys.size() || !t.try_tighten(i)) throw InvalidPivot("rows of the requested non-basis are dependent");
    t.recompute();
    return t;
  }

  [[nodiscard]] std::set<std::size_t> nonbasis() const {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_basic(n_ + i)) out.insert(i);
    return out;
  }

  /// Values of the problem variables in the current candidate.
  [[nodiscard]] Assignment candidate() const {
    Assignment a;
    for (std::size_t j = 0; j < n_; ++j) a.set(j, value_[j]);
    return a;
  }

  [[nodiscard]] const DeltaScalar& row_value(std::size_t i) const { return value_[n_ + i]; }

  /// Swaps `leaving` out of the non-basis and `entering` in.
  void pivot(std::size_t leaving, std::size_t entering) {
    if (leaving == entering) throw InvalidPivot("leaving and entering row coincide");
    if (leaving >= m_ || entering >= m_) throw InvalidPivot("row index out of range");
    if (is_basic(n_ + leaving)) throw InvalidPivot("leaving row is not in the non-basis");
    if (!is_basic(n_ + entering)) throw InvalidPivot("entering row is already in the non-basis");
    const auto& row = rows_[row_of_[n_ + entering]];
    if (!is_zero(row[n_ + leaving])) {
      pivot_vars(n_ + entering, n_ + leaving);
      recompute();
      return;
    }
    std::set<std::size_t> target = nonbasis();
    target.erase(leaving);
    target.insert(entering);
    std::vector<std::vector<Rational>> coeffs;
    for (std::size_t i : target) coeffs.push_back(sys_->row(i).coeffs());
    if (rank(coeffs) != target.size()) throw InvalidPivot("entering row depends on the remaining non-basis");
    *this = with_nonbasis(*sys_, target);
  }

  struct Step {
    bool done = false;
    std::optional<FarkasCertificate> conflict;  ///< over the rows of the system
  };

  /// One round of the check loop: finds the lowest violated basic slack and
  /// pivots it to its bound. Bland's rule picks the entering variable once
  /// `use_heuristic` is false; otherwise the shortest column wins, ties by
  /// index.
  Step step(bool use_heuristic) {
    std::optional<std::size_t> violated;
    for (std::size_t i = 0; i < m_ && !violated; ++i)
      if (is_basic(n_ + i) && sys_->row(i).bound() < value_[n_ + i]) violated = n_ + i;
    if (!violated) return {true, std::nullopt};

    const auto& row = rows_[row_of_[*violated]];
    std::optional<std::size_t> entering;
    std::size_t best_len = 0;
    for (std::size_t v = 0; v < n_ + m_; ++v) {
      if (is_basic(v) || is_zero(row[v])) continue;
      // Free variables move either way; a slack at its bound can only decrease.
      if (v >= n_ && sgn(row[v]) < 0) continue;
      if (!use_heuristic) {
        entering = v;
        break;
      }
      std::size_t len = column_length(v);
      if (!entering || len < best_len) {
        entering = v;
        best_len = len;
      }
    }
    if (!entering) {
      // s_i = sum c_k s_k with every c_k < 0 at its bound: e_i + sum |c_k| e_k.
      FarkasCertificate cert;
      cert.multipliers[*violated - n_] = 1;
      for (std::size_t v = n_; v < n_ + m_; ++v)
        if (!is_basic(v) && !is_zero(row[v])) cert.multipliers[v - n_] = -row[v];
      return {true, std::move(cert)};
    }
    pivot_vars(*violated, *entering);
    recompute();
    return {false, std::nullopt};
  }

 private:
  explicit Tableau(const LinearSystem& sys)
      : sys_(&sys), n_(sys.nvars()), m_(sys.size()), row_of_(n_ + m_, npos), value_(n_ + m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      std::vector<Rational> row(n_ + m_, Rational(0));
      for (std::size_t j = 0; j < n_; ++j) row[j] = sys.coeff(i, j);
      row_of_[n_ + i] = rows_.size();
      basic_of_.push_back(n_ + i);
      rows_.push_back(std::move(row));
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  [[nodiscard]] bool is_basic(std::size_t v) const { return row_of_[v] != npos; }

  [[nodiscard]] std::size_t column_length(std::size_t v) const {
    std::size_t len = 0;
    for (const auto& r : rows_)
      if (!is_zero(r[v])) ++len;
    return len;
  }

  // Makes slack i nonbasic by exchanging it with a free nonbasic variable.
  bool try_tighten(std::size_t i) {
    const std::size_t s = n_ + i;
    if (!is_basic(s)) return false;
    const auto& row = rows_[row_of_[s]];
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_basic(j) && !is_zero(row[j])) {
        pivot_vars(s, j);
        return true;
      }
    }
    return false;
  }

  // basic <-> nonbasic exchange on the coefficient rows.
  void pivot_vars(std::size_t basic, std::size_t nonbasic) {
    const std::size_t r = row_of_[basic];
    std::vector<Rational> expr = std::move(rows_[r]);
    const Rational c = expr[nonbasic];
    // nonbasic = (basic - sum_{v != nonbasic} expr_v v) / c
    std::vector<Rational> solved(n_ + m_, Rational(0));
    for (std::size_t v = 0; v < n_ + m_; ++v)
      if (v != nonbasic && !is_zero(expr[v])) solved[v] = -expr[v] / c;
    solved[basic] = 1 / c;
    for (auto& other : rows_) {
      if (other.empty()) continue;
      const Rational d = other[nonbasic];
      if (is_zero(d)) continue;
      other[nonbasic] = 0;
      for (std::size_t v = 0; v < n_ + m_; ++v)
        if (!is_zero(solved[v])) other[v] += d * solved[v];
    }
    rows_[r] = std::move(solved);
    row_of_[nonbasic] = r;
    row_of_[basic] = npos;
    basic_of_[r] = nonbasic;
  }

  // Nonbasic slacks sit at their bounds; free nonbasic variables keep their
  // value; basic values follow from the rows.
  void recompute() {
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_basic(n_ + i)) value_[n_ + i] = sys_->row(i).bound();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      DeltaScalar v;
      for (std::size_t k = 0; k < n_ + m_; ++k)
        if (!is_zero(rows_[r][k])) v += rows_[r][k] * value_[k];
      value_[basic_of_[r]] = std::move(v);
    }
  }

  const LinearSystem* sys_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> row_of_;
  std::vector<std::size_t> basic_of_;
  std::vector<DeltaScalar> value_;
};

struct SimplexOptions {
  /// Pivots taken with the column-length heuristic before falling back to
  /// pure Bland's rule, which guarantees termination.
  std::uint64_t heuristic_pivots = 1000;
};

struct SimplexResult {
  SolveOutcome outcome;
  Stats stats;
  /// Non-basis of the final tableau.
  std::set<std::size_t> nonbasis;
};

inline SimplexResult simplex_solve(const LinearSystem& sys, const SimplexOptions& opts = {}) {
  Tableau t = Tableau::build(sys);
  std::uint64_t pivots = 0;
  while (true) {
    Tableau::Step s = t.step(pivots < opts.heuristic_pivots);
    if (!s.done) {
      ++pivots;
      continue;
    }
    SimplexResult res;
    res.stats.pivots = pivots;
    res.nonbasis = t.nonbasis();
    if (s.conflict) {
      FarkasCertificate cert{compose(s.conflict->multipliers, sys)};
      res.outcome = Unsat{cert.core(), std::move(cert)};
    } else {
      res.outcome = Sat{t.candidate()};
    }
    return res;
  }
}

}  // namespace fmplex
