#pragma once

#include <fmplex/smtlib/parser.hpp>
#include <fmplex/system.hpp>

#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace fmplex::smtlib {

/// `3`, `(/ 1 2)`, `(- 3)`, `(- (/ 1 2))`.
inline std::string format_rational(const Rational& r) {
  Rational a = abs(r);
  std::string body = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return sgn(r) < 0 ? "(- " + body + ")" : body;
}

/// Linear term over named variables, `0` when every coefficient is zero.
inline std::string format_term(const std::vector<Rational>& coeffs, const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (is_zero(coeffs[k])) continue;
    parts.push_back(coeffs[k] == 1 ? names[k] : "(* " + format_rational(coeffs[k]) + " " + names[k] + ")");
  }
  if (parts.empty()) return "0";
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

inline std::string format_atom(const Atom& a, const std::vector<std::string>& names) {
  static constexpr const char* ops[] = {"<=", "<", ">=", ">", "="};
  return std::string("(") + ops[static_cast<int>(a.rel)] + " " + format_term(a.coeffs, names) + " " +
         format_rational(a.rhs) + ")";
}

/// `(<= t c)` or, for a negative delta part, `(< t c)`.
inline std::string format_row(const Constraint& row, const std::vector<std::string>& names) {
  return std::string(sgn(row.bound.delta) < 0 ? "(< " : "(<= ") + format_term(row.coeffs, names) + " " +
         format_rational(row.bound.real) + ")";
}

inline std::string format_conjunction(const LinearSystem& sys, const std::vector<std::string>& names) {
  if (sys.empty()) return "true";
  std::string out = "(and";
  for (const auto& r : sys.rows()) out += " " + format_row(r.constraint, names);
  return out + ")";
}

/// Disjunction of conjunctions as one SMT-LIB term.
inline std::string print_qe(const std::vector<LinearSystem>& disjuncts, const std::vector<std::string>& names) {
  if (disjuncts.empty()) return "false";
  if (disjuncts.size() == 1 && disjuncts[0].empty()) return "true";
  std::string out = "(or";
  for (const auto& d : disjuncts) out += " " + format_conjunction(d, names);
  return out + ")";
}

struct SatAnswer {
  std::vector<Rational> values;
};

struct UnsatAnswer {
  /// Atom indices of the core, ascending.
  std::vector<std::size_t> core;
};

using Answer = std::variant<SatAnswer, UnsatAnswer>;

/// Core labels without repetition; several atoms of one named assert share
/// a label.
inline std::vector<std::string> core_labels(const Problem& p, const std::vector<std::size_t>& core) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t k : core) {
    std::string l = p.label(k);
    if (seen.insert(l).second) out.push_back(std::move(l));
  }
  return out;
}

inline std::string print_result(const Answer& answer, const Problem& p) {
  std::ostringstream out;
  if (const auto* s = std::get_if<SatAnswer>(&answer)) {
    out << "sat\n";
    if (p.get_model) {
      out << "(model";
      for (std::size_t k = 0; k < p.variables.size(); ++k)
        out << " (define-fun " << p.variables[k] << " () Real " << format_rational(s->values[k]) << ")";
      out << ")\n";
    }
  } else {
    out << "unsat\n";
    if (p.get_unsat_core) {
      out << "(core";
      for (const auto& l : core_labels(p, std::get<UnsatAnswer>(answer).core)) out << " " << l;
      out << ")\n";
    }
  }
  return out.str();
}

/// A script that parses back to `p`.
inline std::string print_problem(const Problem& p) {
  std::ostringstream out;
  out << "(set-logic QF_LRA)\n";
  for (const auto& v : p.variables) out << "(declare-fun " << v << " () Real)\n";
  std::size_t next_assert = 0;
  for (std::size_t k = 0; k < p.atoms.size();) {
    // Asserts without atoms keep the numbering of the ones that follow.
    for (; next_assert < p.atoms[k].assert_index; ++next_assert) out << "(assert (and))\n";
    ++next_assert;
    std::size_t end = k;
    while (end < p.atoms.size() && p.atoms[end].assert_index == p.atoms[k].assert_index) ++end;
    std::string body;
    if (end - k == 1) {
      body = format_atom(p.atoms[k].atom, p.variables);
    } else {
      body = "(and";
      for (std::size_t a = k; a < end; ++a) body += " " + format_atom(p.atoms[a].atom, p.variables);
      body += ")";
    }
    if (p.atoms[k].name) body = "(! " + body + " :named " + *p.atoms[k].name + ")";
    out << "(assert " << body << ")\n";
    k = end;
  }
  if (p.check_sat) out << "(check-sat)\n";
  if (p.get_model) out << "(get-model)\n";
  if (p.get_unsat_core) out << "(get-unsat-core)\n";
  return out.str();
}

}  // namespace fmplex::smtlib
