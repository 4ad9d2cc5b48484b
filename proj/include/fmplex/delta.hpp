#pragma once

#include <fmplex/system.hpp>

namespace fmplex {

/// Picks delta0 = min(1, min over rows of the slack ratio) so that replacing
/// delta by delta0 keeps every row satisfied, and returns the rational model.
/// Rows whose delta part does not shrink the slack impose no limit.
inline Assignment instantiate_delta(const Assignment& model, const LinearSystem& system) {
  Rational delta0(1);
  for (const auto& r : system.rows()) {
    DeltaScalar lhs = linear_value(r.coeffs(), model);
    // (lhs.real - b.real) + (lhs.delta - b.delta) * d <= 0 must hold at d = delta0.
    Rational growth = lhs.delta - r.bound().delta;
    if (sgn(growth) <= 0) continue;
    Rational room = r.bound().real - lhs.real;
    Rational limit = room / growth;
    if (limit < delta0) delta0 = limit;
  }
  Assignment out;
  out.delta = delta0;
  for (const auto& [var, v] : model.values) out.set(var, DeltaScalar(v.instantiate(delta0)));
  return out;
}

}  // namespace fmplex
