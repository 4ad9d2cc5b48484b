#pragma once

#include <fmplex/constraint.hpp>

#include <cassert>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace fmplex {

/// Sparse row of the transformation matrix F: original row index -> factor.
/// Only nonzero factors are stored.
using Provenance = std::map<std::size_t, Rational>;

inline void accumulate(Provenance& into, const Provenance& from, const Rational& factor) {
  for (const auto& [idx, c] : from) {
    Rational& slot = into[idx];
    slot += factor * c;
    if (is_zero(slot)) into.erase(idx);
  }
}

inline bool is_nonnegative(const Provenance& f) {
  for (const auto& [idx, c] : f)
    if (sgn(c) < 0) return false;
  return true;
}

inline std::vector<std::size_t> support(const Provenance& f) {
  std::vector<std::size_t> s;
  s.reserve(f.size());
  for (const auto& [idx, c] : f) s.push_back(idx);
  return s;
}

struct Row {
  Constraint constraint;
  Provenance provenance;
  /// Backtrack level: depth of the system at which the last same-direction
  /// subtraction produced this row.
  unsigned btlvl = 0;

  [[nodiscard]] const std::vector<Rational>& coeffs() const { return constraint.coeffs; }
  [[nodiscard]] const DeltaScalar& bound() const { return constraint.bound; }
};

/// `A x <= b` together with F (rows of the original system each row derives
/// from) and the per-row backtrack level.
class LinearSystem {
 public:
  LinearSystem() = default;
  LinearSystem(std::size_t nvars, std::size_t origin_count) : nvars_(nvars), origin_count_(origin_count) {}

  /// Original system: F is the identity and every backtrack level is zero.
  static LinearSystem from_constraints(std::size_t nvars, std::vector<Constraint> rows) {
    LinearSystem sys(nvars, rows.size());
    sys.rows_.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].coeffs.size() == nvars);
      Row r{std::move(rows[i]), {{i, Rational(1)}}, 0};
      sys.rows_.push_back(std::move(r));
    }
    return sys;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] std::size_t origin_count() const { return origin_count_; }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] bool empty() const { return rows_.empty(); }
  [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }
  [[nodiscard]] const Row& row(std::size_t i) const { return rows_[i]; }
  [[nodiscard]] const Rational& coeff(std::size_t i, std::size_t j) const { return rows_[i].constraint.coeffs[j]; }

  void add_row(Row r) {
    assert(r.constraint.coeffs.size() == nvars_);
    rows_.push_back(std::move(r));
  }

  [[nodiscard]] std::vector<Constraint> constraints() const {
    std::vector<Constraint> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.constraint);
    return out;
  }

  /// Same rows, but treated as a fresh original: identity provenance and
  /// zero backtrack levels.
  [[nodiscard]] LinearSystem rebased() const { return from_constraints(nvars_, constraints()); }

  [[nodiscard]] bool column_is_zero(std::size_t j) const {
    for (const auto& r : rows_)
      if (!is_zero(r.constraint.coeffs[j])) return false;
    return true;
  }

  /// True iff every row is `0 <= b` with b >= 0.
  [[nodiscard]] bool is_trivially_satisfied() const {
    for (const auto& r : rows_)
      if (!r.constraint.is_trivial() || r.constraint.bound.sign() < 0) return false;
    return true;
  }

 private:
  std::size_t nvars_ = 0;
  std::size_t origin_count_ = 0;
  std::vector<Row> rows_;
};

/// Linear combination sum(factor * row) with provenance carried along.
inline Row combine(const std::vector<std::pair<Rational, const Row*>>& terms, std::size_t nvars) {
  Row out;
  out.constraint.coeffs.assign(nvars, Rational(0));
  for (const auto& [factor, row] : terms) {
    for (std::size_t k = 0; k < nvars; ++k)
      if (!is_zero(row->constraint.coeffs[k])) out.constraint.coeffs[k] += factor * row->constraint.coeffs[k];
    out.constraint.bound += row->constraint.bound * factor;
    accumulate(out.provenance, row->provenance, factor);
  }
  return out;
}

struct IndexSets {
  std::vector<std::size_t> lower;  ///< a_ij < 0
  std::vector<std::size_t> upper;  ///< a_ij > 0
  std::vector<std::size_t> none;   ///< a_ij = 0
};

inline IndexSets index_sets(const LinearSystem& sys, std::size_t j) {
  IndexSets s;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    int c = sgn(sys.coeff(i, j));
    (c < 0 ? s.lower : (c > 0 ? s.upper : s.none)).push_back(i);
  }
  return s;
}

/// Checks f_i . A_orig = a_i and f_i . b_orig = b_i for every row, exactly.
inline bool provenance_consistent(const LinearSystem& sys, const LinearSystem& original) {
  for (const auto& r : sys.rows()) {
    std::vector<Rational> coeffs(sys.nvars(), Rational(0));
    DeltaScalar bound;
    for (const auto& [idx, c] : r.provenance) {
      if (idx >= original.size()) return false;
      const auto& o = original.row(idx).constraint;
      for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += c * o.coeffs[k];
      bound += o.bound * c;
    }
    if (coeffs != r.constraint.coeffs || bound != r.constraint.bound) return false;
  }
  return true;
}

/// Maps a provenance vector expressed over `sys` rows onto the rows `sys`
/// itself derives from.
inline Provenance compose(const Provenance& local, const LinearSystem& sys) {
  Provenance out;
  for (const auto& [idx, c] : local) accumulate(out, sys.row(idx).provenance, c);
  return out;
}

inline std::vector<std::size_t> compose_support(const std::vector<std::size_t>& local, const LinearSystem& sys) {
  std::set<std::size_t> out;
  for (std::size_t idx : local)
    for (const auto& [o, c] : sys.row(idx).provenance) out.insert(o);
  return {out.begin(), out.end()};
}

}  // namespace fmplex
