#pragma once

#include <fmplex/smtlib/printer.hpp>

#include <cstdint>
#include <random>
#include <string>

namespace fmplex {

struct GenParams {
  std::size_t nvars = 3;
  std::size_t nrows = 6;
  long coeff_lo = -3;
  long coeff_hi = 3;
  long bound_lo = -5;
  long bound_hi = 5;
  /// Probability that an instance gets a planted solution.
  double sat_bias = 0.5;
  /// Probability that a row is strict.
  double strict_ratio = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

/// Integers and coin flips from a 64-bit Mersenne Twister, computed the same
/// way on every platform.
class GenRng {
 public:
  explicit GenRng(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
  }

  bool chance(double p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return static_cast<double>(rng_() % 1'000'000) < p * 1'000'000;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Instance `index` of the family described by `params`. With a planted
/// solution, every row violated by a random rational point is relaxed just
/// enough to include it (weak rows tight, strict rows with slack 1).
inline smtlib::Problem generate(const GenParams& params, std::uint64_t index) {
  detail::GenRng rng(params.seed * 0x9E3779B97F4A7C15ULL + index);
  smtlib::Problem p;
  for (std::size_t v = 0; v < params.nvars; ++v) p.variables.push_back("x" + std::to_string(v + 1));
  const bool planted = rng.chance(params.sat_bias);
  std::vector<Rational> point;
  for (std::size_t v = 0; v < params.nvars; ++v)
    point.push_back(make_rational(rng.uniform(params.bound_lo * 2, params.bound_hi * 2), rng.uniform(1, 3)));
  for (std::size_t r = 0; r < params.nrows; ++r) {
    Atom atom;
    for (std::size_t v = 0; v < params.nvars; ++v) atom.coeffs.emplace_back(rng.uniform(params.coeff_lo, params.coeff_hi));
    atom.rhs = rng.uniform(params.bound_lo, params.bound_hi);
    const bool strict = rng.chance(params.strict_ratio);
    atom.rel = strict ? Relation::Lt : Relation::Le;
    if (planted) {
      Rational at_point;
      for (std::size_t v = 0; v < params.nvars; ++v) at_point += atom.coeffs[v] * point[v];
      if (strict && at_point >= atom.rhs) atom.rhs = at_point + 1;
      if (!strict && at_point > atom.rhs) atom.rhs = at_point;
    }
    if (rng.chance(0.5)) {
      for (auto& c : atom.coeffs) c = -c;
      atom.rhs = -atom.rhs;
      atom.rel = strict ? Relation::Gt : Relation::Ge;
    }
    p.atoms.push_back({std::move(atom), std::nullopt, r});
  }
  p.check_sat = true;
  return p;
}

/// SMT-LIB script for generate(params, index), asking for a model or core.
inline std::string generate_script(const GenParams& params, std::uint64_t index) {
  smtlib::Problem p = generate(params, index);
  p.get_model = true;
  p.get_unsat_core = true;
  return smtlib::print_problem(p) + "(exit)\n";
}

}  // namespace fmplex
