#pragma once

#include <fmplex/errors.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fmplex::smtlib {

class ParseError : public Error {
 public:
  enum class Kind { Syntax, Unsupported, UnknownSymbol };

  ParseError(Kind kind, std::size_t line, std::size_t col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), kind_(kind), line_(line), col_(col) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return col_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t col_;
};

struct SExpr {
  bool is_list = false;
  std::string atom;  ///< symbol, keyword or literal text when !is_list
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;

  [[nodiscard]] bool is_symbol(std::string_view s) const { return !is_list && atom == s; }
  /// First element is the symbol `head`.
  [[nodiscard]] bool is_call(std::string_view head) const {
    return is_list && !items.empty() && items.front().is_symbol(head);
  }
};

namespace detail {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (true) {
      skip();
      if (pos_ >= text_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, line_, col_, msg); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      advance();
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(ParseError::Kind::Syntax, e.line, e.col, "unterminated list");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '|' || c == '"') {
      const char close = c;
      e.atom.push_back(c);
      advance();
      while (pos_ < text_.size() && text_[pos_] != close) {
        e.atom.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError(ParseError::Kind::Syntax, e.line, e.col, "unterminated literal");
      e.atom.push_back(close);
      advance();
      if (close == '|') e.atom = e.atom.substr(1, e.atom.size() - 2);
      return e;
    }
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      e.atom.push_back(c);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline std::vector<SExpr> read_sexprs(std::string_view text) { return detail::Reader(text).read_all(); }

}  // namespace fmplex::smtlib
