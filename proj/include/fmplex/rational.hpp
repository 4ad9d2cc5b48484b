#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

namespace fmplex {

/// Arbitrary precision fraction. GMP keeps every arithmetic result in lowest
/// terms with a positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// A value r + d*delta, where delta is a positive infinitesimal. Compared
/// lexicographically, so `a*x < b` can be carried as `a*x <= b - delta`.
struct DeltaScalar {
  Rational real;
  Rational delta;

  DeltaScalar() = default;
  DeltaScalar(Rational r) : real(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  DeltaScalar(Rational r, Rational d) : real(std::move(r)), delta(std::move(d)) {}
  DeltaScalar(long r) : real(r) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] int sign() const {
    int s = sgn(real);
    return s != 0 ? s : sgn(delta);
  }
  [[nodiscard]] bool is_zero() const { return sgn(real) == 0 && sgn(delta) == 0; }
  [[nodiscard]] bool is_standard() const { return sgn(delta) == 0; }

  DeltaScalar& operator+=(const DeltaScalar& o) {
    real += o.real;
    delta += o.delta;
    return *this;
  }
  DeltaScalar& operator-=(const DeltaScalar& o) {
    real -= o.real;
    delta -= o.delta;
    return *this;
  }
  DeltaScalar& operator*=(const Rational& c) {
    real *= c;
    delta *= c;
    return *this;
  }
  DeltaScalar& operator/=(const Rational& c) {
    real /= c;
    delta /= c;
    return *this;
  }

  friend DeltaScalar operator+(DeltaScalar a, const DeltaScalar& b) { return a += b; }
  friend DeltaScalar operator-(DeltaScalar a, const DeltaScalar& b) { return a -= b; }
  friend DeltaScalar operator*(DeltaScalar a, const Rational& c) { return a *= c; }
  friend DeltaScalar operator*(const Rational& c, DeltaScalar a) { return a *= c; }
  friend DeltaScalar operator/(DeltaScalar a, const Rational& c) { return a /= c; }
  friend DeltaScalar operator-(const DeltaScalar& a) { return {Rational(-a.real), Rational(-a.delta)}; }

  friend bool operator==(const DeltaScalar& a, const DeltaScalar& b) {
    return a.real == b.real && a.delta == b.delta;
  }
  friend std::strong_ordering operator<=>(const DeltaScalar& a, const DeltaScalar& b) {
    int c = cmp(a.real, b.real);
    if (c == 0) c = cmp(a.delta, b.delta);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Substitutes a concrete positive value for delta.
  [[nodiscard]] Rational instantiate(const Rational& delta_value) const {
    return Rational(real + delta * delta_value);
  }

  [[nodiscard]] std::string str() const {
    if (sgn(delta) == 0) return real.get_str();
    return "(" + real.get_str() + (sgn(delta) < 0 ? " - " : " + ") +
           Rational(abs(delta)).get_str() + "d)";
  }
};

inline std::ostream& operator<<(std::ostream& os, const DeltaScalar& v) { return os << v.str(); }

}  // namespace fmplex
