#pragma once

#include <fmplex/errors.hpp>
#include <fmplex/rational.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fmplex {

enum class Relation { Le, Lt, Ge, Gt, Eq };

/// A parsed linear atom `coeffs . x  rel  rhs`.
struct Atom {
  std::vector<Rational> coeffs;
  Relation rel = Relation::Le;
  Rational rhs;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A row `coeffs . x <= bound`. Strict rows carry a negative delta part in
/// the bound.
struct Constraint {
  std::vector<Rational> coeffs;
  DeltaScalar bound;
  std::optional<std::size_t> origin;

  [[nodiscard]] std::size_t nvars() const { return coeffs.size(); }

  [[nodiscard]] bool is_trivial() const {
    for (const auto& c : coeffs)
      if (!is_zero(c)) return false;
    return true;
  }

  /// `0 <= b` with b < 0.
  [[nodiscard]] bool is_conflict() const { return is_trivial() && bound.sign() < 0; }

  [[nodiscard]] std::size_t nonzeros() const {
    std::size_t k = 0;
    for (const auto& c : coeffs)
      if (!is_zero(c)) ++k;
    return k;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (is_zero(coeffs[k])) continue;
      if (!s.empty()) s += " + ";
      s += coeffs[k].get_str() + "*x" + std::to_string(k + 1);
    }
    if (s.empty()) s = "0";
    return s + " <= " + bound.str();
  }

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.coeffs == b.coeffs && a.bound == b.bound;
  }
};

struct NormalizedAtom {
  Constraint row;
  /// The row stands for `coeffs . x = bound` rather than `<=`.
  bool equality = false;
};

/// Canonicalizes any relation into a `<=` row.
inline NormalizedAtom normalize(const Atom& atom, std::optional<std::size_t> origin = {}) {
  NormalizedAtom out;
  out.row.origin = origin;
  const bool flip = atom.rel == Relation::Ge || atom.rel == Relation::Gt;
  const bool strict = atom.rel == Relation::Lt || atom.rel == Relation::Gt;
  out.row.coeffs.reserve(atom.coeffs.size());
  for (const auto& c : atom.coeffs) out.row.coeffs.emplace_back(flip ? Rational(-c) : c);
  out.row.bound = DeltaScalar(flip ? Rational(-atom.rhs) : atom.rhs, strict ? Rational(-1) : Rational(0));
  out.equality = atom.rel == Relation::Eq;
  return out;
}

enum class BoundKind { Lower, Upper };

/// `x_var >= coeffs . x + constant` (Lower) or `x_var <= ...` (Upper);
/// coeffs[var] is always zero.
struct SymbolicBound {
  BoundKind kind;
  std::size_t var;
  std::vector<Rational> coeffs;
  DeltaScalar constant;
};

/// Solves the row for x_j. The row induces a lower bound iff its coefficient
/// for x_j is negative.
inline SymbolicBound bound_rewrite(const Constraint& row, std::size_t j) {
  if (j >= row.coeffs.size() || is_zero(row.coeffs[j]))
    throw NotABound("row has no coefficient for x" + std::to_string(j + 1));
  const Rational& a = row.coeffs[j];
  SymbolicBound bnd{sgn(a) < 0 ? BoundKind::Lower : BoundKind::Upper, j, {}, row.bound / a};
  bnd.coeffs.reserve(row.coeffs.size());
  for (std::size_t k = 0; k < row.coeffs.size(); ++k)
    bnd.coeffs.emplace_back(k == j ? Rational(0) : Rational(-row.coeffs[k] / a));
  return bnd;
}

/// Partial map from variable index to value. After delta instantiation every
/// value has a zero delta part and `delta` holds the value used.
struct Assignment {
  std::map<std::size_t, DeltaScalar> values;
  std::optional<Rational> delta;

  [[nodiscard]] const DeltaScalar* find(std::size_t var) const {
    auto it = values.find(var);
    return it == values.end() ? nullptr : &it->second;
  }
  void set(std::size_t var, DeltaScalar v) { values[var] = std::move(v); }
};

/// coeffs . alpha; every variable with a nonzero coefficient must be assigned.
inline DeltaScalar linear_value(const std::vector<Rational>& coeffs, const Assignment& alpha) {
  DeltaScalar sum;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (is_zero(coeffs[k])) continue;
    const DeltaScalar* v = alpha.find(k);
    if (v == nullptr) throw IncompleteAssignment("x" + std::to_string(k + 1) + " is unassigned");
    sum += coeffs[k] * *v;
  }
  return sum;
}

inline DeltaScalar evaluate_bound(const SymbolicBound& bnd, const Assignment& alpha) {
  return linear_value(bnd.coeffs, alpha) + bnd.constant;
}

inline bool evaluate(const Assignment& alpha, const Constraint& row) {
  return linear_value(row.coeffs, alpha) <= row.bound;
}

}  // namespace fmplex
