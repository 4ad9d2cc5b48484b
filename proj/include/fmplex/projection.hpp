#pragma once

#include <fmplex/errors.hpp>
#include <fmplex/system.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fmplex {

/// One row of a single-step projection matrix F': at most two nonzero
/// entries over the rows of the parent system.
using StepRow = std::vector<std::pair<std::size_t, Rational>>;
using StepMatrix = std::vector<StepRow>;

/// How copied (coefficient-zero) rows get their backtrack level.
enum class BtlvlRule {
  Inherit,  ///< keep the parent row's level; a copy performs no subtraction
  Literal,  ///< the level of the new system, as for any non-conical row
};

enum class Side { Lower, Upper };

/// Backtrack level of one projected row. `child_level` is the depth of the
/// system being built: a combination of two same-direction bounds is only a
/// conical combination of rows of that system.
inline unsigned update_btlvl(const StepRow& f, const std::vector<unsigned>& parent_levels, unsigned child_level,
                             BtlvlRule rule = BtlvlRule::Inherit) {
  if (f.size() == 1) return rule == BtlvlRule::Inherit ? parent_levels[f[0].first] : child_level;
  bool positive = std::all_of(f.begin(), f.end(), [](const auto& e) { return sgn(e.second) > 0; });
  if (!positive) return child_level;
  unsigned lvl = 0;
  for (const auto& [idx, c] : f) lvl = std::max(lvl, parent_levels[idx]);
  return lvl;
}

inline std::vector<unsigned> update_btlvl(const StepMatrix& f, const std::vector<unsigned>& parent_levels,
                                          unsigned child_level, BtlvlRule rule = BtlvlRule::Inherit) {
  std::vector<unsigned> out;
  out.reserve(f.size());
  for (const auto& row : f) out.push_back(update_btlvl(row, parent_levels, child_level, rule));
  return out;
}

/// F'A x <= F'b with provenance F'F and updated backtrack levels.
inline LinearSystem apply_projection(const LinearSystem& sys, const StepMatrix& f, unsigned child_level,
                                     BtlvlRule rule = BtlvlRule::Inherit) {
  std::vector<unsigned> levels;
  levels.reserve(sys.size());
  for (const auto& r : sys.rows()) levels.push_back(r.btlvl);
  LinearSystem out(sys.nvars(), sys.origin_count());
  for (const auto& frow : f) {
    std::vector<std::pair<Rational, const Row*>> terms;
    terms.reserve(frow.size());
    for (const auto& [idx, c] : frow) terms.emplace_back(c, &sys.row(idx));
    Row r = frow.size() == 1 && frow[0].second == 1 ? sys.row(frow[0].first) : combine(terms, sys.nvars());
    r.btlvl = update_btlvl(frow, levels, child_level, rule);
    out.add_row(std::move(r));
  }
  return out;
}

/// Projection matrix of P_{j,i}; `designee` empty means i = bottom. Row order:
/// I- \ {i}, then I+ \ {i}, then I0, each ascending.
inline StepMatrix restricted_projection_matrix(const LinearSystem& sys, std::size_t j,
                                               std::optional<std::size_t> designee) {
  const IndexSets sets = index_sets(sys, j);
  const bool both = !sets.lower.empty() && !sets.upper.empty();
  StepMatrix f;
  if (!designee) {
    if (both)
      throw InvalidDesignee("x" + std::to_string(j + 1) + " has lower and upper bounds; bottom is not a valid designee");
  } else {
    const std::size_t i = *designee;
    if (!both) throw InvalidDesignee("x" + std::to_string(j + 1) + " is not bounded on both sides");
    if (i >= sys.size() || is_zero(sys.coeff(i, j)))
      throw InvalidDesignee("row " + std::to_string(i) + " does not bound x" + std::to_string(j + 1));
    const Rational inv_i = 1 / sys.coeff(i, j);
    for (std::size_t k : sets.lower) {
      if (k == i) continue;
      f.push_back({{i, inv_i}, {k, Rational(-1 / sys.coeff(k, j))}});
    }
    for (std::size_t k : sets.upper) {
      if (k == i) continue;
      f.push_back({{i, Rational(-inv_i)}, {k, Rational(1 / sys.coeff(k, j))}});
    }
  }
  for (std::size_t k : sets.none) f.push_back({{k, Rational(1)}});
  return f;
}

/// P_{j,i}(A x <= b). `child_level` is the depth of the resulting system.
inline LinearSystem restricted_projection(const LinearSystem& sys, std::size_t j, std::optional<std::size_t> designee,
                                          unsigned child_level = 1, BtlvlRule rule = BtlvlRule::Inherit) {
  return apply_projection(sys, restricted_projection_matrix(sys, j, designee), child_level, rule);
}

/// FMP_j^-, FMP_j^+: one restricted projection per bound on the given side,
/// or the single bottom projection when x_j is unbounded on a side.
inline std::vector<LinearSystem> fmp_set(const LinearSystem& sys, std::size_t j, Side side, unsigned child_level = 1,
                                         BtlvlRule rule = BtlvlRule::Inherit) {
  const IndexSets sets = index_sets(sys, j);
  std::vector<LinearSystem> out;
  if (sets.lower.empty() || sets.upper.empty()) {
    out.push_back(restricted_projection(sys, j, std::nullopt, child_level, rule));
    return out;
  }
  for (std::size_t i : side == Side::Lower ? sets.lower : sets.upper)
    out.push_back(restricted_projection(sys, j, i, child_level, rule));
  return out;
}

}  // namespace fmplex
