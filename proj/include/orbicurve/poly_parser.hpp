#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace orbicurve {

// Grammar (whitespace insignificant):
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' uint)?
//   base     := rational | VAR | '(' expr ')'
//   rational := int ('/' uint)?
// An integer literal followed by '/' and another integer binds as one
// rational ("3/4*z" is (3/4)z); elsewhere '/' is rejected here, which lets
// parse_ratfun treat a top-level '/' as the numerator/denominator split.
namespace parser_detail {

enum class Tok { Int, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  Int value;
  size_t pos;
  size_t var = 0;  // index into the variable list for Tok::Var
};

inline std::vector<Token> lex(std::string_view text, std::string_view vars) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Int, Int(std::string(text.substr(i, j - i))), i, 0});
      i = j;
      continue;
    }
    Tok k;
    size_t var = 0;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: {
        size_t v = vars.find(c);
        if (v != std::string_view::npos) {
          k = Tok::Var;
          var = v;
          break;
        }
        throw InputError("syntax error at position " + std::to_string(i) +
                         ": unexpected character '" + std::string(1, c) + "'");
      }
    }
    out.push_back({k, Int(0), i, var});
    ++i;
  }
  out.push_back({Tok::End, Int(0), text.size(), 0});
  return out;
}

// Recursive-descent parser over an algebra policy:
//   Alg::P                        value type (a polynomial ring)
//   Alg::constant(Rational) -> P  embed a rational
//   Alg::var(size_t) -> P         the i-th variable
//   Alg::size(P) -> int           degree bound used to cap '^'
template <class Alg>
class BasicParser {
 public:
  using P = typename Alg::P;

  BasicParser(std::string_view text, std::string_view vars) : toks_(lex(text, vars)) {}

  P parse_expr() {
    P p = parse_term();
    while (peek() == Tok::Plus || peek() == Tok::Minus) {
      bool plus = peek() == Tok::Plus;
      ++i_;
      P q = parse_term();
      p = plus ? p + q : p - q;
    }
    return p;
  }

  void expect_end() const {
    if (peek() != Tok::End) fail("unexpected input");
  }

  bool at_slash() const { return peek() == Tok::Slash; }
  void eat_slash() { ++i_; }

 private:
  static constexpr unsigned kMaxExponent = 512;  // also caps the result degree

  Tok peek(size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)].kind; }
  const Token& tok() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("syntax error at position " + std::to_string(tok().pos) + ": " + what);
  }

  P parse_term() {
    // A '-' binds to a following integer literal; otherwise it negates the
    // term. Both readings agree wherever the grammar allows both.
    bool neg = false;
    if (peek() == Tok::Minus && peek(1) != Tok::Int) {
      ++i_;
      neg = true;
    }
    P p = parse_factor();
    while (peek() == Tok::Star) {
      ++i_;
      p = p * parse_factor();
    }
    return neg ? -p : p;
  }

  P parse_factor() {
    P b = parse_base();
    if (peek() != Tok::Caret) return b;
    ++i_;
    if (peek() != Tok::Int) fail("non-integer exponent");
    Int e = tok().value;
    ++i_;
    if (e > kMaxExponent || (Alg::size(b) > 0 && e * Alg::size(b) > kMaxExponent))
      throw InputError("exponent overflow at position " + std::to_string(toks_[i_ - 1].pos));
    return poly_pow(b, e.convert_to<unsigned>());
  }

  P parse_base() {
    switch (peek()) {
      case Tok::Minus:
        if (peek(1) != Tok::Int) fail("expected a number after '-'");
        ++i_;
        return -parse_rational();
      case Tok::Int:
        return parse_rational();
      case Tok::Var: {
        size_t v = tok().var;
        ++i_;
        return Alg::var(v);
      }
      case Tok::LParen: {
        ++i_;
        P p = parse_expr();
        if (peek() != Tok::RParen) fail("expected ')'");
        ++i_;
        return p;
      }
      default:
        fail("expected a number, variable, or '('");
    }
  }

  P parse_rational() {
    Int n = tok().value;
    ++i_;
    if (peek() == Tok::Slash && peek(1) == Tok::Int) {
      ++i_;
      Int d = tok().value;
      if (d == 0) fail("zero denominator");
      ++i_;
      return Alg::constant(Rational(n, d));
    }
    return Alg::constant(Rational(n));
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

struct PolyAlgebra {
  using P = Polynomial;
  static P constant(const Rational& r) { return Polynomial(r); }
  static P var(size_t) { return Polynomial::var(); }
  static int size(const P& p) { return p.degree(); }
};

using Parser = BasicParser<PolyAlgebra>;

}  // namespace parser_detail

inline Polynomial parse_poly(std::string_view text, char var = 'z') {
  parser_detail::Parser p(text, std::string_view(&var, 1));
  Polynomial r = p.parse_expr();
  p.expect_end();
  return r;
}

struct RatFun {
  Polynomial num;
  Polynomial den;  // 1 when the text had no top-level '/'
};

inline RatFun parse_ratfun(std::string_view text, char var = 'z') {
  parser_detail::Parser p(text, std::string_view(&var, 1));
  Polynomial num = p.parse_expr();
  if (!p.at_slash()) {
    p.expect_end();
    return {num, Polynomial(Rational(1))};
  }
  p.eat_slash();
  Polynomial den = p.parse_expr();
  p.expect_end();
  if (den.is_zero()) throw InputError("denominator polynomial is zero");
  return {num, den};
}

inline std::string print_poly(const Polynomial& p, char var = 'z') {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p[i];
    if (c == 0) continue;
    Rational a = rat_abs(c);
    bool lead = out.empty();
    if (lead) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += rat_str(a);
      continue;
    }
    if (a != 1) out += rat_str(a) + "*";
    else if (lead && c < 0) out += "1*";  // keep "-1*z^2" inside the grammar
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

inline std::string print_ratfun(const Polynomial& num, const Polynomial& den, char var = 'z') {
  if (den == Polynomial(Rational(1))) return print_poly(num, var);
  return "(" + print_poly(num, var) + ") / (" + print_poly(den, var) + ")";
}

}  // namespace orbicurve
