#pragma once

#include <fmplex/outcome.hpp>
#include <fmplex/projection.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fmplex {

/// Which FMP set to branch into when a variable has bounds on both sides.
enum class SignPolicy {
  Minus,
  Plus,
  Smaller,  ///< the side with fewer bounds, lower on ties
};

struct QeOptions {
  SignPolicy sign = SignPolicy::Minus;
  std::uint64_t max_rows = default_max_rows;
  BtlvlRule btlvl_rule = BtlvlRule::Inherit;
  /// Called for every system of the elimination tree, root included, with
  /// its depth.
  std::function<void(const LinearSystem&, unsigned)> on_node;
};

/// Disjunction of conjunctions: the input is equivalent to the disjunction of
/// `disjuncts` with the eliminated variables existentially quantified.
struct QeResult {
  std::vector<LinearSystem> disjuncts;
  /// Total rows of all systems built below the root.
  std::uint64_t rows_generated = 0;
};

namespace detail {

inline void fmplex_qe_rec(const LinearSystem& sys, std::span<const std::size_t> vars, unsigned lvl,
                          const QeOptions& opts, QeResult& out) {
  if (opts.on_node) opts.on_node(sys, lvl);
  if (vars.empty()) {
    out.disjuncts.push_back(sys);
    return;
  }
  const std::size_t j = vars.front();
  const IndexSets sets = index_sets(sys, j);
  Side side = opts.sign == SignPolicy::Plus ? Side::Upper : Side::Lower;
  if (opts.sign == SignPolicy::Smaller && sets.upper.size() < sets.lower.size()) side = Side::Upper;
  for (const LinearSystem& child : fmp_set(sys, j, side, lvl + 1, opts.btlvl_rule)) {
    out.rows_generated += child.size();
    if (out.rows_generated > opts.max_rows) {
      Stats s;
      s.rows_generated = out.rows_generated;
      throw BudgetExceeded("row budget exceeded", s);
    }
    fmplex_qe_rec(child, vars.subspan(1), lvl + 1, opts, out);
  }
}

}  // namespace detail

/// Eliminates `vars` in order by iterated FMP sets, without any pruning.
inline QeResult fmplex_qe(const LinearSystem& sys, std::span<const std::size_t> vars, const QeOptions& opts = {}) {
  QeResult out;
  detail::fmplex_qe_rec(sys, vars, 0, opts, out);
  return out;
}

}  // namespace fmplex
