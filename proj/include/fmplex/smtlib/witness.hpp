#pragma once

#include <fmplex/smtlib/parser.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fmplex::smtlib {

/// Variable name -> value.
using ModelWitness = std::map<std::string, Rational>;

/// Core labels as printed (`a3`, a `:named` label) or bare atom indices.
struct CoreWitness {
  std::vector<std::string> labels;
};

using Witness = std::variant<ModelWitness, CoreWitness>;

namespace detail {

inline Rational constant_value(const SExpr& e) {
  auto bad = [&]() -> Rational { throw ParseError(ParseError::Kind::Syntax, e.line, e.col, "expected a rational constant"); };
  if (!e.is_list) {
    std::string_view s = e.atom;
    bool negative = !s.empty() && s.front() == '-';
    if (negative) s.remove_prefix(1);
    std::size_t slash = s.find('/');
    std::optional<Rational> num = parse_number(std::string(s.substr(0, slash)));
    if (!num) return bad();
    Rational v = *num;
    if (slash != std::string_view::npos) {
      std::optional<Rational> den = parse_number(std::string(s.substr(slash + 1)));
      if (!den || is_zero(*den)) return bad();
      v /= *den;
    }
    return negative ? Rational(-v) : v;
  }
  if (e.items.empty() || e.items.front().is_list) return bad();
  const std::string& op = e.items.front().atom;
  const std::size_t argc = e.items.size() - 1;
  if (op == "-" && argc == 1) return -constant_value(e.items[1]);
  if (op == "/" && argc == 2) {
    Rational d = constant_value(e.items[2]);
    if (is_zero(d)) return bad();
    return constant_value(e.items[1]) / d;
  }
  return bad();
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace detail

/// Either `(model (define-fun x () Real v) ...)` or `x=v, y=w` with values
/// such as `3`, `-1/2`, `0.25`.
inline ModelWitness parse_model(std::string_view text) {
  ModelWitness out;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '(') {
    for (const SExpr& e : read_sexprs(text)) {
      const std::vector<SExpr>* defs = &e.items;
      std::size_t start = 0;
      if (e.is_call("model")) {
        start = 1;
      } else if (!e.is_list) {
        throw ParseError(ParseError::Kind::Syntax, e.line, e.col, "expected a model");
      }
      for (std::size_t k = start; k < defs->size(); ++k) {
        const SExpr& d = (*defs)[k];
        if (!d.is_call("define-fun") || d.items.size() != 5 || d.items[1].is_list)
          throw ParseError(ParseError::Kind::Syntax, d.line, d.col, "expected (define-fun name () Real value)");
        out[d.items[1].atom] = detail::constant_value(d.items[4]);
      }
    }
    return out;
  }
  for (const std::string& item : detail::split_list(text)) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(ParseError::Kind::Syntax, 1, 1, "expected name=value, got '" + item + "'");
    SExpr v;
    v.atom = item.substr(eq + 1);
    out[item.substr(0, eq)] = detail::constant_value(v);
  }
  return out;
}

/// `(core a b)` or a comma/space separated label list.
inline CoreWitness parse_core(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '(') {
    CoreWitness out;
    for (const SExpr& e : read_sexprs(text)) {
      if (!e.is_call("core")) throw ParseError(ParseError::Kind::Syntax, e.line, e.col, "expected (core ...)");
      for (std::size_t k = 1; k < e.items.size(); ++k) {
        if (e.items[k].is_list) throw ParseError(ParseError::Kind::Syntax, e.items[k].line, e.items[k].col, "expected a label");
        out.labels.push_back(e.items[k].atom);
      }
    }
    return out;
  }
  return {detail::split_list(text)};
}

/// Output of a solve run: `sat` plus optional model, or `unsat` plus
/// optional core. Comment lines are ignored.
inline Witness parse_solver_output(std::string_view text) {
  std::string body;
  std::optional<bool> sat;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string_view::npos || line[a] == ';') continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    std::string_view trimmed = line.substr(a, b - a + 1);
    if (!sat) {
      if (trimmed == "sat") sat = true;
      else if (trimmed == "unsat") sat = false;
      else throw ParseError(ParseError::Kind::Syntax, 1, 1, "expected 'sat' or 'unsat'");
      continue;
    }
    body += std::string(trimmed) + "\n";
  }
  if (!sat) throw ParseError(ParseError::Kind::Syntax, 1, 1, "empty solver output");
  if (*sat) return parse_model(body);
  return parse_core(body);
}

/// Values in declaration order; nullopt if a variable is missing.
inline std::optional<std::vector<Rational>> model_values(const Problem& p, const ModelWitness& m) {
  std::vector<Rational> out;
  for (const auto& v : p.variables) {
    auto it = m.find(v);
    if (it == m.end()) return std::nullopt;
    out.push_back(it->second);
  }
  return out;
}

/// Atom indices named by the labels; nullopt if a label matches nothing.
inline std::optional<std::vector<std::size_t>> core_atoms(const Problem& p, const CoreWitness& core) {
  std::vector<std::size_t> out;
  for (const auto& l : core.labels) {
    bool matched = false;
    for (std::size_t k = 0; k < p.atoms.size(); ++k) {
      if (p.label(k) == l || std::to_string(k) == l) {
        out.push_back(k);
        matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fmplex::smtlib
