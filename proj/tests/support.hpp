#pragma once

// Builders and brute-force oracles shared by the test binaries. Nothing here
// calls into the code under test except to construct inputs.

#include <fmplex/fmplex.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fmplex::testing {

inline Constraint row(std::vector<long> coeffs, long rhs, bool strict = false) {
  Constraint c;
  for (long a : coeffs) c.coeffs.emplace_back(a);
  c.bound = DeltaScalar(Rational(rhs), Rational(strict ? -1 : 0));
  return c;
}

inline LinearSystem system(std::size_t nvars, std::vector<Constraint> rows) {
  return LinearSystem::from_constraints(nvars, std::move(rows));
}

inline LinearSystem sat2d() {
  return system(2, {row({-1, -1}, -4), row({0, -2}, -2), row({-2, 1}, 1), row({0, 1}, 5)});
}

/// sat2d plus -x2 <= 0.
inline LinearSystem sat2d_floor() {
  return system(2, {row({-1, -1}, -4), row({0, -2}, -2), row({-2, 1}, 1), row({0, 1}, 5), row({0, -1}, 0)});
}

inline LinearSystem unsat3d() {
  return system(3, {row({0, 0, -1}, 0), row({1, -1, -1}, 0), row({1, 0, 0}, -1), row({-1, 1, 0}, -1),
                    row({0, -1, 1}, 0)});
}

inline std::string data_path(const std::string& name) { return std::string(FMPLEX_TEST_DATA) + "/" + name; }

/// Rows with rational values as text, for readable expectations.
inline std::vector<std::string> rows_str(const LinearSystem& sys) {
  std::vector<std::string> out;
  for (const auto& r : sys.rows()) out.push_back(r.constraint.str());
  return out;
}

struct RandomSystemParams {
  std::size_t max_vars = 3;
  std::size_t max_rows = 6;
  long coeff = 2;
  long bound = 2;
  double strict = 0.0;
};

/// Random system with 1..max_vars variables and 1..max_rows rows.
inline LinearSystem random_system(std::mt19937_64& rng, const RandomSystemParams& p) {
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const auto n = static_cast<std::size_t>(pick(1, static_cast<long>(p.max_vars)));
  const auto m = static_cast<std::size_t>(pick(1, static_cast<long>(p.max_rows)));
  std::vector<Constraint> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<long> coeffs;
    for (std::size_t j = 0; j < n; ++j) coeffs.push_back(pick(-p.coeff, p.coeff));
    const bool strict = static_cast<double>(rng() % 1000) < p.strict * 1000;
    rows.push_back(row(coeffs, pick(-p.bound, p.bound), strict));
  }
  return system(n, std::move(rows));
}

/// Determinant by cofactor expansion.
inline Rational determinant(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero(m[0][c])) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> line;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) line.push_back(m[r][k]);
      minor.push_back(std::move(line));
    }
    Rational term = m[0][c] * determinant(minor);
    det += c % 2 == 0 ? term : Rational(-term);
  }
  return det;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const std::vector<std::vector<Rational>>& a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (const auto& rs : subsets(rows, k)) {
      for (const auto& cs : subsets(cols, k)) {
        std::vector<std::vector<Rational>> m;
        for (std::size_t r : rs) {
          std::vector<Rational> line;
          for (std::size_t c : cs) line.push_back(a[r][c]);
          m.push_back(std::move(line));
        }
        if (!is_zero(determinant(m))) return k;
      }
    }
  }
  return 0;
}

/// Grid {-4, -7/2, ..., 4}.
inline std::vector<Rational> grid_axis() {
  std::vector<Rational> out;
  for (long k = -8; k <= 8; ++k) out.push_back(make_rational(k, 2));
  return out;
}

/// Every point of grid_axis()^dims.
inline std::vector<std::vector<Rational>> grid_points(std::size_t dims) {
  const auto axis = grid_axis();
  std::vector<std::vector<Rational>> out{{}};
  for (std::size_t d = 0; d < dims; ++d) {
    std::vector<std::vector<Rational>> next;
    for (const auto& p : out)
      for (const auto& v : axis) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

/// Direct substitution: sum a_k p_k <= b in delta order.
inline bool holds(const Constraint& c, const std::vector<Rational>& point) {
  Rational lhs = 0;
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) lhs += c.coeffs[k] * point[k];
  return DeltaScalar(lhs) <= c.bound;
}

inline bool holds_all(const LinearSystem& sys, const std::vector<Rational>& point) {
  for (const auto& r : sys.rows())
    if (!holds(r.constraint, point)) return false;
  return true;
}

/// Whether some real x_j extends `point` (x_j's entry ignored) to a solution,
/// decided from the interval every row imposes on x_j.
inline bool extends(const LinearSystem& sys, std::size_t j, std::vector<Rational> point) {
  std::optional<DeltaScalar> lo;
  std::optional<DeltaScalar> hi;
  point[j] = 0;
  for (const auto& r : sys.rows()) {
    const Constraint& c = r.constraint;
    Rational rest = 0;
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) rest += c.coeffs[k] * point[k];
    DeltaScalar room = c.bound - DeltaScalar(rest);
    const Rational& a = c.coeffs[j];
    if (is_zero(a)) {
      if (room.sign() < 0) return false;
      continue;
    }
    DeltaScalar limit = room / a;
    if (sgn(a) > 0) {
      if (!hi || limit < *hi) hi = limit;
    } else if (!lo || *lo < limit) {
      lo = limit;
    }
  }
  return !lo || !hi || *lo <= *hi;
}

/// A model is correct iff it satisfies every row of the system.
inline bool model_satisfies(const Assignment& a, const LinearSystem& sys) {
  for (const auto& r : sys.rows())
    if (!evaluate(a, r.constraint)) return false;
  return true;
}

/// Searches f in {0, 1/2, 1, ..., max/2}^m for a Farkas certificate by
/// enumeration; independent of any solver.
inline std::optional<FarkasCertificate> enumerate_certificate(const LinearSystem& sys, long max_halves = 4) {
  const std::size_t m = sys.size();
  std::vector<long> f(m, 0);
  while (true) {
    std::size_t k = 0;
    while (k < m && f[k] == max_halves) f[k++] = 0;
    if (k == m) return std::nullopt;
    ++f[k];
    std::vector<Rational> sum(sys.nvars(), Rational(0));
    DeltaScalar b;
    for (std::size_t i = 0; i < m; ++i) {
      if (f[i] == 0) continue;
      Rational c = make_rational(f[i], 2);
      for (std::size_t v = 0; v < sys.nvars(); ++v) sum[v] += c * sys.coeff(i, v);
      b += sys.row(i).bound() * c;
    }
    if (std::all_of(sum.begin(), sum.end(), [](const Rational& r) { return is_zero(r); }) && b.sign() < 0) {
      FarkasCertificate cert;
      for (std::size_t i = 0; i < m; ++i)
        if (f[i] != 0) cert.multipliers[i] = make_rational(f[i], 2);
      return cert;
    }
  }
}

/// Rows `sys` plus the rows in `tight` turned into equalities.
inline LinearSystem with_tight_rows(const LinearSystem& sys, const std::set<std::size_t>& tight) {
  std::vector<Constraint> rows = sys.constraints();
  for (std::size_t i : tight) {
    Constraint c = sys.row(i).constraint;
    for (auto& a : c.coeffs) a = -a;
    c.bound = -c.bound;
    rows.push_back(std::move(c));
  }
  return LinearSystem::from_constraints(sys.nvars(), std::move(rows));
}

}  // namespace fmplex::testing
