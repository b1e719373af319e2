#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/gaussian_rational.hpp"
#include "crtrans/poly.hpp"

// Expression front end.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := base ('^' uint)?
//   base   := literal | 'i' | variable | '(' expr ')' | func '(' expr ')'
//   func   := conj | Re | Im | abs2
//
// Literals are integers or rationals "p/q". A divisor must be a nonzero
// constant. Variables are the names of the variable space plus their
// conjugates zeta_<name>.

namespace crtrans {

struct Expr {
  enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Conj, Re, Im, Abs2 };

  Kind kind = Kind::Literal;
  GaussianRational value;
  std::string name;
  unsigned exponent = 0;
  std::size_t offset = 0;
  std::vector<Expr> kids;
};

namespace detail {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= text_.size()) throw SyntaxError(std::string("expected '") + c + "' before end of input", pos_);
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  Expr expr() {
    Expr lhs = term();
    while (peek('+') || peek('-')) {
      const std::size_t at = pos_;
      const char op = text_[pos_++];
      Expr rhs = term();
      Expr e{op == '+' ? Expr::Kind::Add : Expr::Kind::Sub, {}, {}, 0, at, {}};
      e.kids.push_back(std::move(lhs));
      e.kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek('*') || peek('/')) {
      const std::size_t at = pos_;
      const char op = text_[pos_++];
      Expr rhs = unary();
      Expr e{op == '*' ? Expr::Kind::Mul : Expr::Kind::Div, {}, {}, 0, at, {}};
      e.kids.push_back(std::move(lhs));
      e.kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr unary() {
    if (peek('-')) {
      const std::size_t at = pos_++;
      Expr e{Expr::Kind::Neg, {}, {}, 0, at, {}};
      e.kids.push_back(unary());
      return e;
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr b = base();
    if (!peek('^')) return b;
    const std::size_t at = pos_++;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) {
      if (pos_ >= text_.size()) throw SyntaxError("expected exponent before end of input", pos_);
      throw NonIntegerExponent("exponent at offset " + std::to_string(start) + " is not an unsigned integer");
    }
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.'))
      throw NonIntegerExponent("exponent at offset " + std::to_string(start) + " is not an unsigned integer");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) throw NonIntegerExponent("exponent " + digits + " is too large");
    Expr e{Expr::Kind::Pow, {}, {}, static_cast<unsigned>(std::stoul(digits)), at, {}};
    e.kids.push_back(std::move(b));
    return e;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
      std::string id(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (id == "conj" || id == "Re" || id == "Im" || id == "abs2") {
        expect('(');
        Expr e{func_kind(id), {}, id, 0, at, {}};
        e.kids.push_back(expr());
        expect(')');
        return e;
      }
      if (id == "i") return Expr{Expr::Kind::Literal, GaussianRational::i(), {}, 0, at, {}};
      return Expr{Expr::Kind::Variable, {}, std::move(id), 0, at, {}};
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Expr literal() {
    const std::size_t at = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return std::string(text_.substr(s, pos_ - s));
    };
    std::string num = digits();
    std::string den = "1";
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      den = digits();
      if (den.empty()) throw SyntaxError("expected denominator", pos_);
    }
    Rational q(num + "/" + den, 10);
    if (sgn(q.get_den()) == 0) throw SyntaxError("zero denominator", at);
    q.canonicalize();
    return Expr{Expr::Kind::Literal, GaussianRational(q), {}, 0, at, {}};
  }

  static Expr::Kind func_kind(const std::string& id) {
    if (id == "conj") return Expr::Kind::Conj;
    if (id == "Re") return Expr::Kind::Re;
    if (id == "Im") return Expr::Kind::Im;
    return Expr::Kind::Abs2;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Expr parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

/// Lowers an expression into the given space. conj, Re, Im and abs2 become
/// combinations of the involution.
inline Poly lower(const Expr& e, const SpacePtr& space) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::Literal:
    return Poly::constant(space, e.value);
  case K::Variable: {
    auto v = space->find(e.name);
    if (!v) throw UnknownVariable("'" + e.name + "' at offset " + std::to_string(e.offset));
    return Poly::var(space, *v);
  }
  case K::Neg:
    return -lower(e.kids[0], space);
  case K::Add:
    return lower(e.kids[0], space) + lower(e.kids[1], space);
  case K::Sub:
    return lower(e.kids[0], space) - lower(e.kids[1], space);
  case K::Mul:
    return lower(e.kids[0], space) * lower(e.kids[1], space);
  case K::Div: {
    const Poly d = lower(e.kids[1], space);
    if (!d.is_constant()) throw InvalidInput("divisor at offset " + std::to_string(e.offset) + " is not a constant");
    if (d.is_zero()) throw ZeroDivisor("division by zero at offset " + std::to_string(e.offset));
    return lower(e.kids[0], space) * (GaussianRational(1) / d.constant_term());
  }
  case K::Pow:
    return lower(e.kids[0], space).pow(e.exponent);
  case K::Conj:
    return lower(e.kids[0], space).conj();
  case K::Re: {
    Poly p = lower(e.kids[0], space);
    return (p + p.conj()) * GaussianRational(Rational(1, 2));
  }
  case K::Im: {
    Poly p = lower(e.kids[0], space);
    return (p - p.conj()) * GaussianRational(Rational(0), Rational(-1, 2));
  }
  case K::Abs2: {
    Poly p = lower(e.kids[0], space);
    return p * p.conj();
  }
  }
  throw Error("internal: unknown expression node");
}

inline Poly parse_poly(std::string_view text, const SpacePtr& space) { return lower(parse_expression(text), space); }

/// Constant expression (no variables), e.g. a point coordinate "1/2-3*i".
inline GaussianRational parse_constant(std::string_view text) {
  static const SpacePtr scalar = VarSpace::make({"_"});
  const Poly p = parse_poly(text, scalar);
  if (!p.is_constant()) throw InvalidInput("'" + std::string(text) + "' is not a constant");
  return p.constant_term();
}

/// Fully parenthesized rendering; parses back to the same polynomial.
inline std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::Literal:
    if (e.value.is_real()) return e.value.str();
    return "(" + e.value.str() + ")";
  case K::Variable:
    return e.name;
  case K::Neg:
    return "(-" + to_string(e.kids[0]) + ")";
  case K::Add:
    return "(" + to_string(e.kids[0]) + " + " + to_string(e.kids[1]) + ")";
  case K::Sub:
    return "(" + to_string(e.kids[0]) + " - " + to_string(e.kids[1]) + ")";
  case K::Mul:
    return "(" + to_string(e.kids[0]) + "*" + to_string(e.kids[1]) + ")";
  case K::Div:
    return "(" + to_string(e.kids[0]) + "/" + to_string(e.kids[1]) + ")";
  case K::Pow:
    return "(" + to_string(e.kids[0]) + ")^" + std::to_string(e.exponent);
  case K::Conj:
  case K::Re:
  case K::Im:
  case K::Abs2:
    return e.name + "(" + to_string(e.kids[0]) + ")";
  }
  return {};
}

} // namespace crtrans
