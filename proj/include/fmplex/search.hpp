#pragma once

#include <fmplex/heuristic.hpp>
#include <fmplex/outcome.hpp>
#include <fmplex/projection.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace fmplex {

enum class ConflictKind { NotAConflict, Local, Global };

inline ConflictKind classify_conflict(const Row& row) {
  if (!row.constraint.is_conflict()) return ConflictKind::NotAConflict;
  return is_nonnegative(row.provenance) ? ConflictKind::Global : ConflictKind::Local;
}

/// Extends a model of P_{j,i}(parent) to x_j. Variables that occur in the
/// parent's x_j-bounds but not in the child model are fixed to zero first.
inline Assignment construct_model(Assignment alpha, const BranchChoice& branch, const LinearSystem& parent) {
  const std::size_t j = branch.var;
  auto value_of = [&](const Row& r) {
    SymbolicBound bnd = bound_rewrite(r.constraint, j);
    for (std::size_t v = 0; v < bnd.coeffs.size(); ++v)
      if (!is_zero(bnd.coeffs[v]) && alpha.find(v) == nullptr) alpha.set(v, DeltaScalar());
    return std::pair(bnd.kind, evaluate_bound(bnd, alpha));
  };
  if (branch.designee) {
    DeltaScalar r = value_of(parent.row(*branch.designee)).second;
    alpha.set(j, std::move(r));
    return alpha;
  }
  std::optional<DeltaScalar> lower;
  std::optional<DeltaScalar> upper;
  for (const auto& row : parent.rows()) {
    if (is_zero(row.coeffs()[j])) continue;
    auto [kind, v] = value_of(row);
    if (kind == BoundKind::Lower) {
      if (!lower || *lower < v) lower = std::move(v);
    } else if (!upper || v < *upper) {
      upper = std::move(v);
    }
  }
  alpha.set(j, lower ? *lower : (upper ? *upper : DeltaScalar()));
  return alpha;
}

/// What a search node looks like to an observer.
struct NodeInfo {
  const LinearSystem& system;
  const std::set<std::size_t>& nonbasis;
  const std::set<std::size_t>& excluded;
  unsigned level;
  const std::vector<BranchChoice>& path;
};

/// Hooks for instrumentation and property checks; all default to no-ops.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void on_node(const NodeInfo&) {}
  /// Called once per branching node with the chosen V in iteration order.
  virtual void on_choice(const NodeInfo&, const std::vector<BranchChoice>&) {}
  /// A local conflict in row `row` makes the node return to `target_level`.
  virtual void on_local_conflict(const NodeInfo&, std::size_t /*row*/, int /*target_level*/) {}
};

enum class Variant { A, B, C };

struct SearchOptions {
  /// Exclude the mapped original of a failed designee.
  bool use_exclusion = true;
  /// Lines 3-5: backjump to the minimal backtrack level of a local conflict.
  bool use_backtracking = true;
  Heuristic heuristic = MinFanout{};
  BtlvlRule btlvl_rule = BtlvlRule::Inherit;
  std::uint64_t max_nodes = default_max_nodes;
  std::uint64_t max_rows = default_max_rows;
  /// With false, SAT children do not end the search; the first model found
  /// is still returned.
  bool stop_at_sat = true;
  SearchObserver* observer = nullptr;

  static SearchOptions for_variant(Variant v, Heuristic h = MinFanout{}) {
    SearchOptions o;
    o.use_exclusion = v != Variant::A;
    o.use_backtracking = v == Variant::C;
    o.heuristic = std::move(h);
    return o;
  }
};

namespace detail {

class Search {
 public:
  Search(const SearchOptions& opts) : opts_(opts), chooser_(opts.heuristic) {}

  SolveOutcome run(const LinearSystem& root) { return visit(root, {}, {}, 0); }

  [[nodiscard]] Stats stats() const {
    Stats s;
    s.nodes_visited = nodes_;
    s.rows_generated = rows_;
    s.max_depth = depth_;
    return s;
  }

 private:
  SolveOutcome visit(const LinearSystem& sys, const std::set<std::size_t>& nonbasis, std::set<std::size_t> excluded,
                     unsigned lvl) {
    if (++nodes_ > opts_.max_nodes) throw BudgetExceeded("node budget exceeded", stats());
    depth_ = std::max<std::uint64_t>(depth_, lvl);
    NodeInfo info{sys, nonbasis, excluded, lvl, path_};
    if (opts_.observer) opts_.observer->on_node(info);

    if (sys.is_trivially_satisfied()) return Sat{};
    std::optional<std::size_t> local;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const Row& r = sys.row(i);
      switch (classify_conflict(r)) {
        case ConflictKind::Global:
          return Unsat{support(r.provenance), FarkasCertificate{r.provenance}};
        case ConflictKind::Local:
          if (!local || r.btlvl < sys.row(*local).btlvl) local = i;
          break;
        case ConflictKind::NotAConflict:
          break;
      }
    }
    if (local) {
      const Row& r = sys.row(*local);
      const int target = opts_.use_backtracking ? static_cast<int>(r.btlvl) - 1 : static_cast<int>(lvl) - 1;
      if (opts_.observer) opts_.observer->on_local_conflict(info, *local, target);
      return PartialUnsat{target, support(r.provenance)};
    }

    std::set<std::size_t> core;
    std::optional<Sat> found;
    const std::vector<BranchChoice> choices = chooser_.choose(sys, branch_choices(sys, excluded_rows(sys, nonbasis, excluded)), nonbasis);
    if (opts_.observer) opts_.observer->on_choice(info, choices);
    for (const BranchChoice& choice : choices) {
      LinearSystem child = restricted_projection(sys, choice.var, choice.designee, lvl + 1, opts_.btlvl_rule);
      rows_ += child.size();
      if (rows_ > opts_.max_rows) throw BudgetExceeded("row budget exceeded", stats());
      std::set<std::size_t> child_nonbasis = nonbasis;
      std::optional<std::size_t> mapped;
      if (choice.designee) {
        mapped = nonbasis_map(sys.row(*choice.designee), nonbasis);
        child_nonbasis.insert(*mapped);
      }
      path_.push_back(choice);
      SolveOutcome res = visit(child, child_nonbasis, excluded, lvl + 1);
      path_.pop_back();
      if (auto* u = std::get_if<Unsat>(&res)) return std::move(*u);
      if (auto* s = std::get_if<Sat>(&res)) {
        s->model = construct_model(std::move(s->model), choice, sys);
        if (opts_.stop_at_sat) return std::move(*s);
        if (!found) found = std::move(*s);
      } else {
        auto& p = std::get<PartialUnsat>(res);
        if (p.level < static_cast<int>(lvl)) return std::move(p);
        core.insert(p.core.begin(), p.core.end());
      }
      if (opts_.use_exclusion && mapped) excluded.insert(*mapped);
    }
    if (found) return std::move(*found);
    if (lvl == 0) return Unsat{{core.begin(), core.end()}, std::nullopt};
    return PartialUnsat{static_cast<int>(lvl) - 1, {core.begin(), core.end()}};
  }

  // Rows of the current system whose mapped original is excluded.
  static std::set<std::size_t> excluded_rows(const LinearSystem& sys, const std::set<std::size_t>& nonbasis,
                                             const std::set<std::size_t>& excluded) {
    std::set<std::size_t> out;
    if (excluded.empty()) return out;
    for (std::size_t i = 0; i < sys.size(); ++i)
      if (excluded.contains(nonbasis_map(sys.row(i), nonbasis))) out.insert(i);
    return out;
  }

  const SearchOptions& opts_;
  Chooser chooser_;
  std::vector<BranchChoice> path_;
  std::uint64_t nodes_ = 0;
  std::uint64_t rows_ = 0;
  std::uint64_t depth_ = 0;
};

}  // namespace detail

/// FMplex satisfiability search. The input's rows act as the search root;
/// cores and certificates are mapped back through the input's provenance.
/// Variables that end up unassigned get zero.
inline std::pair<SolveOutcome, Stats> solve(const LinearSystem& input, const SearchOptions& opts = {}) {
  detail::Search search(opts);
  SolveOutcome res = search.run(input.rebased());
  if (auto* s = std::get_if<Sat>(&res)) {
    for (std::size_t v = 0; v < input.nvars(); ++v)
      if (s->model.find(v) == nullptr) s->model.set(v, DeltaScalar());
  } else if (auto* u = std::get_if<Unsat>(&res)) {
    if (u->certificate) {
      u->certificate = FarkasCertificate{compose(u->certificate->multipliers, input)};
      u->core = u->certificate->core();
    } else {
      u->core = compose_support(u->core, input);
    }
  }
  return {std::move(res), search.stats()};
}

inline std::pair<SolveOutcome, Stats> solve(const LinearSystem& input, Variant v, Heuristic h = MinFanout{}) {
  return solve(input, SearchOptions::for_variant(v, std::move(h)));
}

}  // namespace fmplex
