#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fastloop/poly.hpp"

namespace fastloop {

/// Thrown on malformed expressions; `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    MultiPoly p = expr();
    skip_ws();
    if (!at_end()) {
      if (std::isalpha(peek()) || peek() == '_' || peek() == '(' || std::isdigit(peek()))
        throw ParseError("expected operator (juxtaposition is not multiplication)", pos_);
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    return p;
  }

 private:
  static constexpr unsigned kMaxExponent = 4096;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (accept('*')) acc *= unary();
    skip_ws();
    if (peek() == '/') throw ParseError("division is only allowed inside integer literals a/b", pos_);
    return acc;
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("exponent must be a non-negative integer", at);
      Integer e(digits());
      if (e > kMaxExponent) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
      skip_ws();
      if (peek() == '^') throw ParseError("chained exponents need parentheses", pos_);
    }
    return base;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly primary() {
    skip_ws();
    std::size_t at = pos_;
    if (at_end()) throw ParseError("unexpected end of expression", at);
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den(1);
      std::size_t save = pos_;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer denominator", pos_);
        std::size_t dpos = pos_;
        den = Integer(digits());
        if (den == 0) throw ParseError("zero denominator", dpos);
      } else {
        pos_ = save;
      }
      Rational q(num, den);
      q.canonicalize();
      return MultiPoly::constant(vars_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MultiPoly::variable(vars_, i);
      throw ParseError("undeclared variable '" + name + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  std::string_view text_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression with `+ - * ^`, parentheses and integer or a/b literals.
/// Multiplication must be written explicitly.
inline MultiPoly parse_poly(std::string_view text, const VarList& vars) {
  for (const auto& v : vars) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw std::invalid_argument("invalid variable name '" + v + "'");
  }
  return detail::ExprParser(text, vars).parse();
}

}  // namespace fastloop
