#pragma once

#include <fmplex/system.hpp>

#include <span>
#include <utility>
#include <vector>

namespace fmplex {

namespace detail {

// Scales each row by the lcm of its denominators.
inline std::vector<std::vector<mpz_class>> integer_rows(std::span<const std::vector<Rational>> rows) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    mpz_class l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(row.size());
    for (const auto& q : row) ints.emplace_back(q.get_num() * (l / q.get_den()));
    out.push_back(std::move(ints));
  }
  return out;
}

}  // namespace detail

/// Rank by fraction-free (Bareiss) elimination over the integers.
inline std::size_t rank(std::span<const std::vector<Rational>> rows) {
  auto m = detail::integer_rows(rows);
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m.front().size();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t p = r;
    while (p < nrows && sgn(m[p][col]) == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t k = col + 1; k < ncols; ++k) {
        m[i][k] = m[r][col] * m[i][k] - m[i][col] * m[r][k];
        mpz_divexact(m[i][k].get_mpz_t(), m[i][k].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[r][col];
    ++r;
  }
  return r;
}

inline std::size_t rank(const std::vector<std::vector<Rational>>& rows) {
  return rank(std::span<const std::vector<Rational>>(rows));
}

/// Rank of the stacked provenance matrix F of a system.
inline std::size_t provenance_rank(const LinearSystem& sys) {
  std::vector<std::vector<Rational>> dense;
  dense.reserve(sys.size());
  for (const auto& r : sys.rows()) {
    std::vector<Rational> row(sys.origin_count(), Rational(0));
    for (const auto& [idx, c] : r.provenance) row[idx] = c;
    dense.push_back(std::move(row));
  }
  return rank(dense);
}

}  // namespace fmplex
