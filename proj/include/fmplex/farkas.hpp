#pragma once

#include <fmplex/system.hpp>

namespace fmplex {

/// Nonnegative multipliers over the original rows whose combination is the
/// trivially false row `0 <= c`, c < 0.
struct FarkasCertificate {
  Provenance multipliers;

  [[nodiscard]] std::vector<std::size_t> core() const { return support(multipliers); }
};

inline bool check_farkas(const FarkasCertificate& cert, const LinearSystem& original) {
  std::vector<Rational> sum(original.nvars(), Rational(0));
  DeltaScalar bound;
  for (const auto& [idx, f] : cert.multipliers) {
    if (idx >= original.size() || sgn(f) < 0) return false;
    const auto& row = original.row(idx).constraint;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += f * row.coeffs[k];
    bound += row.bound * f;
  }
  for (const auto& c : sum)
    if (!is_zero(c)) return false;
  return bound.sign() < 0;
}

}  // namespace fmplex
