#pragma once

#include <fmplex/simplex.hpp>

#include <set>
#include <vector>

namespace fmplex {

/// True iff row i of F is a conical combination of the other rows, i.e.
/// some r >= 0 with r_i = 0 has r F = f_i. Decided exactly by simplex.
inline bool is_redundant_by_construction(std::size_t i, const std::vector<Provenance>& f) {
  if (f.size() <= 1 || i >= f.size()) return false;
  std::set<std::size_t> columns;
  for (const auto& row : f)
    for (const auto& [c, v] : row) columns.insert(c);

  // One variable r_k per row k != i.
  std::vector<std::size_t> vars;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (k != i) vars.push_back(k);
  const std::size_t n = vars.size();
  std::vector<Constraint> rows;
  for (std::size_t v = 0; v < n; ++v) {
    Constraint c;
    c.coeffs.assign(n, Rational(0));
    c.coeffs[v] = -1;
    rows.push_back(std::move(c));
  }
  for (std::size_t col : columns) {
    Constraint le;
    le.coeffs.assign(n, Rational(0));
    for (std::size_t v = 0; v < n; ++v)
      if (auto it = f[vars[v]].find(col); it != f[vars[v]].end()) le.coeffs[v] = it->second;
    auto it = f[i].find(col);
    Rational target = it == f[i].end() ? Rational(0) : it->second;
    le.bound = DeltaScalar(target);
    Constraint ge;
    for (const auto& c : le.coeffs) ge.coeffs.emplace_back(-c);
    ge.bound = DeltaScalar(Rational(-target));
    rows.push_back(std::move(le));
    rows.push_back(std::move(ge));
  }
  return is_sat(simplex_solve(LinearSystem::from_constraints(n, std::move(rows))).outcome);
}

/// Same check on the provenance rows of a system.
inline bool is_redundant_by_construction(std::size_t i, const LinearSystem& sys) {
  std::vector<Provenance> f;
  f.reserve(sys.size());
  for (const auto& r : sys.rows()) f.push_back(r.provenance);
  return is_redundant_by_construction(i, f);
}

}  // namespace fmplex
