#pragma once

#include <fmplex/errors.hpp>
#include <fmplex/farkas.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fmplex {

struct Sat {
  Assignment model;
};

struct Unsat {
  /// Original row indices, ascending.
  std::vector<std::size_t> core;
  /// Absent only when the search exhausted the root without a global conflict.
  std::optional<FarkasCertificate> certificate;
};

struct PartialUnsat {
  int level = 0;
  std::vector<std::size_t> core;
};

using SolveOutcome = std::variant<Sat, Unsat, PartialUnsat>;

inline bool is_sat(const SolveOutcome& o) { return std::holds_alternative<Sat>(o); }
inline bool is_unsat(const SolveOutcome& o) { return std::holds_alternative<Unsat>(o); }

/// Instrumentation counters. A counter that does not apply to a backend
/// stays empty.
struct Stats {
  std::optional<std::uint64_t> nodes_visited;
  std::optional<std::uint64_t> rows_generated;
  std::optional<std::uint64_t> pivots;
  std::optional<std::uint64_t> max_depth;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, Stats stats) : Error(what), stats_(std::move(stats)) {}
  [[nodiscard]] const Stats& stats() const { return stats_; }

 private:
  Stats stats_;
};

inline constexpr std::uint64_t default_max_nodes = 1'000'000;
inline constexpr std::uint64_t default_max_rows = 10'000'000;

}  // namespace fmplex
