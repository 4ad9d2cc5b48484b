#pragma once

#include <fmplex/constraint.hpp>
#include <fmplex/smtlib/sexpr.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmplex::smtlib {

struct ParsedAtom {
  Atom atom;
  std::optional<std::string> name;
  /// Zero-based index of the `assert` command the atom came from.
  std::size_t assert_index = 0;

  friend bool operator==(const ParsedAtom&, const ParsedAtom&) = default;
};

struct Problem {
  std::vector<std::string> variables;
  /// Asserted atoms with `and` flattened, in source order.
  std::vector<ParsedAtom> atoms;
  bool check_sat = false;
  bool get_model = false;
  bool get_unsat_core = false;

  [[nodiscard]] std::size_t nvars() const { return variables.size(); }

  /// Core label of atom k: its `:named` label, else `a<k>`.
  [[nodiscard]] std::string label(std::size_t k) const {
    return atoms[k].name ? *atoms[k].name : "a" + std::to_string(k);
  }

  [[nodiscard]] std::optional<std::size_t> variable_index(std::string_view name) const {
    for (std::size_t k = 0; k < variables.size(); ++k)
      if (variables[k] == name) return k;
    return std::nullopt;
  }

  friend bool operator==(const Problem&, const Problem&) = default;
};

namespace detail {

/// sum coeffs[var] * var + constant
struct LinearTerm {
  std::map<std::size_t, Rational> coeffs;
  Rational constant;

  [[nodiscard]] bool is_constant() const { return coeffs.empty(); }

  void add(const LinearTerm& o, const Rational& factor) {
    for (const auto& [v, c] : o.coeffs) {
      Rational& slot = coeffs[v];
      slot += factor * c;
      if (is_zero(slot)) coeffs.erase(v);
    }
    constant += factor * o.constant;
  }
};

/// Numeral or decimal literal as an exact rational.
inline std::optional<Rational> parse_number(const std::string& s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.front()))) return std::nullopt;
  std::size_t dot = s.find('.');
  std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (dot != std::string::npos && frac.empty()) return std::nullopt;
  for (char c : whole + frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  mpz_class num(whole + frac, 10);
  mpz_class den(1);
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

class Parser {
 public:
  Problem run(std::string_view text) {
    for (const SExpr& cmd : read_sexprs(text)) command(cmd);
    for (auto& a : problem_.atoms) a.atom.coeffs.resize(problem_.variables.size(), Rational(0));
    return std::move(problem_);
  }

 private:
  [[noreturn]] static void fail(ParseError::Kind kind, const SExpr& at, const std::string& msg) {
    throw ParseError(kind, at.line, at.col, msg);
  }
  [[noreturn]] static void syntax(const SExpr& at, const std::string& msg) { fail(ParseError::Kind::Syntax, at, msg); }
  [[noreturn]] static void unsupported(const SExpr& at, const std::string& msg) {
    fail(ParseError::Kind::Unsupported, at, msg);
  }

  void command(const SExpr& cmd) {
    if (!cmd.is_list || cmd.items.empty() || cmd.items.front().is_list) syntax(cmd, "expected a command");
    const std::string& head = cmd.items.front().atom;
    const auto& args = cmd.items;
    if (head == "set-logic") {
      if (args.size() != 2 || args[1].is_list) syntax(cmd, "set-logic expects a logic name");
      if (args[1].atom != "QF_LRA") unsupported(args[1], "logic " + args[1].atom + " is not supported");
    } else if (head == "set-info" || head == "set-option") {
    } else if (head == "declare-fun") {
      if (args.size() != 4 || args[1].is_list || !args[2].is_list) syntax(cmd, "malformed declare-fun");
      if (!args[2].items.empty()) unsupported(args[2], "function symbols with arguments are not supported");
      declare(args[1], args[3]);
    } else if (head == "declare-const") {
      if (args.size() != 3 || args[1].is_list) syntax(cmd, "malformed declare-const");
      declare(args[1], args[2]);
    } else if (head == "assert") {
      if (args.size() != 2) syntax(cmd, "assert expects one formula");
      assertion(args[1]);
    } else if (head == "check-sat") {
      problem_.check_sat = true;
    } else if (head == "get-model") {
      problem_.get_model = true;
    } else if (head == "get-unsat-core") {
      problem_.get_unsat_core = true;
    } else if (head == "exit") {
    } else {
      unsupported(cmd.items.front(), "command " + head + " is not supported");
    }
  }

  void declare(const SExpr& name, const SExpr& sort) {
    if (!sort.is_symbol("Real")) unsupported(sort, "only sort Real is supported");
    if (problem_.variable_index(name.atom)) syntax(name, "symbol " + name.atom + " declared twice");
    problem_.variables.push_back(name.atom);
  }

  void assertion(const SExpr& f) {
    std::optional<std::string> name;
    const SExpr* body = &f;
    if (f.is_call("!")) {
      if (f.items.size() < 2) syntax(f, "annotation without a term");
      for (std::size_t k = 2; k < f.items.size(); ++k) {
        if (f.items[k].is_symbol(":named")) {
          if (k + 1 >= f.items.size() || f.items[k + 1].is_list) syntax(f.items[k], ":named expects a symbol");
          name = f.items[k + 1].atom;
          ++k;
        }
      }
      body = &f.items[1];
    }
    formula(*body, name);
    ++assert_count_;
  }

  void formula(const SExpr& f, const std::optional<std::string>& name) {
    if (f.is_call("and")) {
      for (std::size_t k = 1; k < f.items.size(); ++k) formula(f.items[k], name);
      return;
    }
    if (f.is_call("!")) {
      if (f.items.size() < 2) syntax(f, "annotation without a term");
      formula(f.items[1], name);
      return;
    }
    static const std::map<std::string, Relation> relations{
        {"<=", Relation::Le}, {"<", Relation::Lt}, {">=", Relation::Ge}, {">", Relation::Gt}, {"=", Relation::Eq}};
    if (!f.is_list || f.items.empty() || f.items.front().is_list) {
      if (f.is_symbol("true") || f.is_symbol("false")) unsupported(f, "boolean constants are not supported");
      syntax(f, "expected an atom");
    }
    const std::string& head = f.items.front().atom;
    auto rel = relations.find(head);
    if (rel == relations.end()) {
      if (head == "or" || head == "not" || head == "ite" || head == "distinct" || head == "=>" || head == "xor" ||
          head == "let")
        unsupported(f.items.front(), "'" + head + "' is outside the conjunctive fragment");
      unsupported(f.items.front(), "unknown predicate '" + head + "'");
    }
    if (f.items.size() != 3) unsupported(f, "only binary '" + head + "' is supported");
    LinearTerm diff = term(f.items[1]);
    diff.add(term(f.items[2]), Rational(-1));
    Atom atom;
    atom.coeffs.assign(problem_.variables.size(), Rational(0));
    for (const auto& [v, c] : diff.coeffs) atom.coeffs[v] = c;
    atom.rel = rel->second;
    atom.rhs = -diff.constant;
    problem_.atoms.push_back({std::move(atom), name, assert_count_});
  }

  LinearTerm term(const SExpr& t) {
    LinearTerm out;
    if (!t.is_list) {
      if (auto r = parse_number(t.atom)) {
        out.constant = *r;
        return out;
      }
      auto idx = problem_.variable_index(t.atom);
      if (!idx) fail(ParseError::Kind::UnknownSymbol, t, "unknown symbol '" + t.atom + "'");
      out.coeffs[*idx] = 1;
      return out;
    }
    if (t.items.empty() || t.items.front().is_list) syntax(t, "expected a term");
    const std::string& op = t.items.front().atom;
    const std::size_t argc = t.items.size() - 1;
    if (op == "+") {
      if (argc == 0) syntax(t, "'+' needs arguments");
      for (std::size_t k = 1; k <= argc; ++k) out.add(term(t.items[k]), Rational(1));
    } else if (op == "-") {
      if (argc == 0) syntax(t, "'-' needs arguments");
      if (argc == 1) {
        out.add(term(t.items[1]), Rational(-1));
      } else {
        out = term(t.items[1]);
        for (std::size_t k = 2; k <= argc; ++k) out.add(term(t.items[k]), Rational(-1));
      }
    } else if (op == "*") {
      if (argc == 0) syntax(t, "'*' needs arguments");
      out.constant = 1;
      bool linear_seen = false;
      for (std::size_t k = 1; k <= argc; ++k) {
        LinearTerm f = term(t.items[k]);
        if (f.is_constant()) {
          for (auto& [v, c] : out.coeffs) c *= f.constant;
          out.constant *= f.constant;
          if (is_zero(f.constant)) out.coeffs.clear();
          continue;
        }
        if (linear_seen) unsupported(t, "nonlinear multiplication");
        linear_seen = true;
        LinearTerm scaled;
        scaled.add(f, out.constant);
        out = std::move(scaled);
      }
    } else if (op == "/") {
      if (argc != 2) syntax(t, "'/' expects two arguments");
      out = term(t.items[1]);
      LinearTerm d = term(t.items[2]);
      if (!d.is_constant()) unsupported(t, "division by a non-constant term");
      if (is_zero(d.constant)) unsupported(t, "division by zero");
      LinearTerm scaled;
      scaled.add(out, Rational(1 / d.constant));
      out = std::move(scaled);
    } else if (op == "ite" || op == "let" || op == "to_real" || op == "abs") {
      unsupported(t.items.front(), "'" + op + "' is not supported");
    } else if (problem_.variable_index(op)) {
      unsupported(t, "function application is not supported");
    } else {
      fail(ParseError::Kind::UnknownSymbol, t.items.front(), "unknown function '" + op + "'");
    }
    return out;
  }

  Problem problem_;
  std::size_t assert_count_ = 0;
};

}  // namespace detail

inline Problem parse_problem(std::string_view text) { return detail::Parser().run(text); }

}  // namespace fmplex::smtlib
