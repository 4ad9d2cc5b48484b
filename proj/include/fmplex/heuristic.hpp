#pragma once

#include <fmplex/errors.hpp>
#include <fmplex/system.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fmplex {

/// Eliminate x_var, designating row `designee` as the largest lower or
/// smallest upper bound, or nothing (bottom) when x_var is unbounded on a side.
struct BranchChoice {
  std::size_t var;
  std::optional<std::size_t> designee;

  friend bool operator==(const BranchChoice&, const BranchChoice&) = default;
};

enum class ChoiceKind { Lower, Upper, Bottom };

/// One element V of branch_choices: every designee shares `var` and `kind`.
struct ChoiceSet {
  std::size_t var;
  ChoiceKind kind;
  std::vector<std::size_t> rows;  ///< ascending; empty for Bottom

  [[nodiscard]] std::size_t fanout() const { return kind == ChoiceKind::Bottom ? 1 : rows.size(); }
};

/// Choice sets for every variable with a nonzero column. Rows listed in
/// `excluded` never appear as designees.
inline std::vector<ChoiceSet> branch_choices(const LinearSystem& sys, const std::set<std::size_t>& excluded = {}) {
  std::vector<ChoiceSet> out;
  for (std::size_t j = 0; j < sys.nvars(); ++j) {
    const IndexSets sets = index_sets(sys, j);
    if (sets.lower.empty() && sets.upper.empty()) continue;
    if (sets.lower.empty() || sets.upper.empty()) {
      out.push_back({j, ChoiceKind::Bottom, {}});
      continue;
    }
    auto keep = [&](const std::vector<std::size_t>& rows) {
      std::vector<std::size_t> v;
      for (std::size_t i : rows)
        if (!excluded.contains(i)) v.push_back(i);
      return v;
    };
    out.push_back({j, ChoiceKind::Lower, keep(sets.lower)});
    out.push_back({j, ChoiceKind::Upper, keep(sets.upper)});
  }
  return out;
}

/// The original row a row of a search node stands for: its provenance
/// support minus the non-basis, which must be a single index.
inline std::size_t nonbasis_map(const Row& row, const std::set<std::size_t>& nonbasis) {
  std::optional<std::size_t> found;
  for (const auto& [idx, c] : row.provenance) {
    if (nonbasis.contains(idx)) continue;
    if (found) throw MappingViolation("row depends on more than one original row outside the non-basis");
    found = idx;
  }
  if (!found) throw MappingViolation("row depends only on non-basis rows");
  return *found;
}

struct MinFanout {};
struct MinColumnLength {};
struct RandomChoice {
  std::uint64_t seed = 0;
};

/// One scripted decision: which variable and side to branch on, and
/// optionally the order (by original row) in which designees are tried.
struct ScriptStep {
  std::size_t var;
  ChoiceKind kind;
  std::vector<std::size_t> original_order;
};

struct Scripted {
  std::vector<ScriptStep> steps;
};

using Heuristic = std::variant<MinFanout, MinColumnLength, RandomChoice, Scripted>;

/// Stateful per-solve chooser; the random generator and the script cursor
/// advance with every decision.
class Chooser {
 public:
  explicit Chooser(Heuristic h) : heuristic_(std::move(h)) {
    if (const auto* r = std::get_if<RandomChoice>(&heuristic_)) rng_.seed(r->seed);
  }

  /// Picks V from `choices` and returns it in iteration order.
  std::vector<BranchChoice> choose(const LinearSystem& sys, const std::vector<ChoiceSet>& choices,
                                   const std::set<std::size_t>& nonbasis) {
    return std::visit([&](const auto& h) { return pick(h, sys, choices, nonbasis); }, heuristic_);
  }

 private:
  static std::vector<BranchChoice> expand(const ChoiceSet& v, const std::vector<std::size_t>& order) {
    if (v.kind == ChoiceKind::Bottom) return {{v.var, std::nullopt}};
    std::vector<BranchChoice> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back({v.var, i});
    return out;
  }

  // Smallest fanout; among equal fanouts bottom first, then lowest variable,
  // then the lower-bound set. Rows by ascending backtrack level, then index.
  std::vector<BranchChoice> pick(const MinFanout&, const LinearSystem& sys, const std::vector<ChoiceSet>& choices,
                                 const std::set<std::size_t>&) {
    const ChoiceSet* best = nullptr;
    auto key = [](const ChoiceSet& c) {
      return std::tuple(c.fanout(), c.kind == ChoiceKind::Bottom ? 0 : 1, c.var, c.kind == ChoiceKind::Lower ? 0 : 1);
    };
    for (const auto& c : choices)
      if (best == nullptr || key(c) < key(*best)) best = &c;
    if (best == nullptr) return {};
    std::vector<std::size_t> order = best->rows;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sys.row(a).btlvl < sys.row(b).btlvl; });
    return expand(*best, order);
  }

  // Bottom first; otherwise the variable with fewest bounds, taking its
  // smaller side. Rows with fewest nonzero coefficients first.
  std::vector<BranchChoice> pick(const MinColumnLength&, const LinearSystem& sys,
                                 const std::vector<ChoiceSet>& choices, const std::set<std::size_t>&) {
    for (const auto& c : choices)
      if (c.kind == ChoiceKind::Bottom) return expand(c, {});
    std::optional<std::size_t> best_var;
    std::size_t best_len = 0;
    for (std::size_t j = 0; j < sys.nvars(); ++j) {
      if (sys.column_is_zero(j)) continue;
      std::size_t len = sys.size() - index_sets(sys, j).none.size();
      if (!best_var || len < best_len) {
        best_var = j;
        best_len = len;
      }
    }
    if (!best_var) return {};
    const ChoiceSet* lower = nullptr;
    const ChoiceSet* upper = nullptr;
    for (const auto& c : choices) {
      if (c.var != *best_var) continue;
      (c.kind == ChoiceKind::Lower ? lower : upper) = &c;
    }
    const ChoiceSet& v = upper->rows.size() < lower->rows.size() ? *upper : *lower;
    std::vector<std::size_t> order = v.rows;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sys.row(a).constraint.nonzeros() < sys.row(b).constraint.nonzeros();
    });
    return expand(v, order);
  }

  std::vector<BranchChoice> pick(const RandomChoice&, const LinearSystem&, const std::vector<ChoiceSet>& choices,
                                 const std::set<std::size_t>&) {
    if (choices.empty()) return {};
    const ChoiceSet& v = choices[rng_() % choices.size()];
    std::vector<std::size_t> order = v.rows;
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng_() % k]);
    return expand(v, order);
  }

  std::vector<BranchChoice> pick(const Scripted& s, const LinearSystem& sys, const std::vector<ChoiceSet>& choices,
                                 const std::set<std::size_t>& nonbasis) {
    if (cursor_ >= s.steps.size()) throw ScriptError("script exhausted");
    const ScriptStep& step = s.steps[cursor_++];
    const ChoiceSet* v = nullptr;
    for (const auto& c : choices) {
      if (c.var != step.var) continue;
      if (c.kind == step.kind || c.kind == ChoiceKind::Bottom) v = &c;
    }
    if (v == nullptr)
      throw ScriptError("scripted choice on x" + std::to_string(step.var + 1) + " is not a branch choice here");
    if (v->kind == ChoiceKind::Bottom || step.original_order.empty()) return expand(*v, v->rows);
    std::vector<std::size_t> order;
    for (std::size_t orig : step.original_order)
      for (std::size_t i : v->rows)
        if (nonbasis_map(sys.row(i), nonbasis) == orig) order.push_back(i);
    for (std::size_t i : v->rows)
      if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
    return expand(*v, order);
  }

  Heuristic heuristic_;
  std::mt19937_64 rng_;
  std::size_t cursor_ = 0;
};

}  // namespace fmplex
