#pragma once

#include <fmplex/farkas.hpp>

#include <optional>
#include <set>
#include <span>
#include <vector>

namespace fmplex {

/// An equality `a . x = b` stored in the original system as the two rows
/// `a . x <= b` (index `le`) and `-a . x <= -b` (index `ge`).
struct EqualityPair {
  std::size_t le;
  std::size_t ge;
};

/// x_var = coeffs . x + constant. coeffs[var] is zero and the right-hand side
/// never mentions a variable eliminated by an earlier substitution.
struct Substitution {
  std::size_t var;
  std::vector<Rational> coeffs;
  Rational constant;
};

struct GaussResult {
  /// Set when the equalities alone are inconsistent.
  std::optional<FarkasCertificate> conflict;
  /// The non-equality rows after substitution, provenance over the original.
  LinearSystem reduced;
  std::vector<Substitution> substitutions;

  /// Extends a model of the reduced system to the eliminated variables.
  /// Unassigned variables on the right-hand sides are set to zero first.
  void extend(Assignment& alpha) const {
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
      DeltaScalar v(it->constant);
      for (std::size_t k = 0; k < it->coeffs.size(); ++k) {
        if (is_zero(it->coeffs[k])) continue;
        if (alpha.find(k) == nullptr) alpha.set(k, DeltaScalar());
        v += it->coeffs[k] * *alpha.find(k);
      }
      alpha.set(it->var, std::move(v));
    }
  }
};

/// Eliminates one variable per consistent equality by exact substitution.
/// Each substitution adds a nonnegative multiple of one of the two rows of
/// the equality, so all provenance stays conical.
inline GaussResult gaussian_eliminate(const LinearSystem& original, std::span<const EqualityPair> equalities) {
  const std::size_t n = original.nvars();
  struct Eq {
    Row plus;
    Row minus;
  };
  std::vector<Eq> eqs;
  std::set<std::size_t> eq_rows;
  for (const auto& e : equalities) {
    eqs.push_back({original.row(e.le), original.row(e.ge)});
    eq_rows.insert(e.le);
    eq_rows.insert(e.ge);
  }
  std::vector<Row> ineqs;
  for (std::size_t i = 0; i < original.size(); ++i)
    if (!eq_rows.contains(i)) ineqs.push_back(original.row(i));

  GaussResult result;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const Row& plus = eqs[k].plus;
    std::size_t p = 0;
    while (p < n && is_zero(plus.coeffs()[p])) ++p;
    if (p == n) {
      int s = plus.bound().sign();
      if (s < 0) {
        result.conflict = FarkasCertificate{plus.provenance};
        return result;
      }
      if (s > 0) {
        result.conflict = FarkasCertificate{eqs[k].minus.provenance};
        return result;
      }
      continue;
    }
    const Rational pivot = plus.coeffs()[p];
    Substitution sub{p, std::vector<Rational>(n, Rational(0)), Rational(plus.bound().real / pivot)};
    for (std::size_t j = 0; j < n; ++j)
      if (j != p) sub.coeffs[j] = -plus.coeffs()[j] / pivot;
    result.substitutions.push_back(std::move(sub));

    // r + lambda * plus with lambda = -r_p / pivot; negative lambda uses minus.
    auto eliminate = [&](Row& r) {
      const Rational c = r.coeffs()[p];
      if (is_zero(c)) return;
      Rational lambda = -c / pivot;
      const Row* src = sgn(lambda) >= 0 ? &plus : &eqs[k].minus;
      Rational factor = abs(lambda);
      Row out = combine({{Rational(1), &r}, {factor, src}}, n);
      out.btlvl = r.btlvl;
      r = std::move(out);
    };
    for (std::size_t l = k + 1; l < eqs.size(); ++l) {
      eliminate(eqs[l].plus);
      eliminate(eqs[l].minus);
    }
    for (auto& r : ineqs) eliminate(r);
  }

  result.reduced = LinearSystem(n, original.origin_count());
  for (auto& r : ineqs) result.reduced.add_row(std::move(r));
  return result;
}

}  // namespace fmplex
