#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>

#include "symk/curve.hpp"

namespace symk {

FieldRef parse_field(const std::string& s);  // "GF(5)", "GF(9)", "GF(9,x^2+1)"
// "3 mod 5", "x+1 in GF(9,x^2+1)", or an expression in x when `field` is given.
Elem parse_element(const std::string& s, FieldRef field = nullptr);
Poly parse_poly(const std::string& s, FieldRef field, const std::string& var = "t");
// "P1/GF(5)", "GF(5)(t)", "E/GF(5): y^2 = x^3 + x + 1"
CurveRef parse_curve(const std::string& s);
Function parse_function(const std::string& s, const CurveRef& C);
// "(t^2+1)", "inf", "[(0,1)]@E", "[(z,z+1)]@E/2"
Place parse_place(const std::string& s, const CurveRef& C);
EPoint parse_point(const std::string& s, const CurveRef& E, int degree = 1);  // "(0,1)" or "O"

namespace detail {

// Minimal recursive-descent parser for + - * / ^ and parentheses.
class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}
  std::size_t pos() const { return i_; }
  const std::string& text() const { return s_; }
  void skip_ws();
  bool eof();
  bool peek(char c);
  bool accept(char c);
  void expect(char c);
  [[noreturn]] void error(const std::string& msg) const;
  bool parse_uint(u64& v);
  std::string parse_ident();

  template <class T>
  T parse_expr(const std::function<T(const std::string&)>& var, const std::function<T(i64)>& num,
               const std::function<T(const T&)>& inv);

  std::string s_;
  std::size_t i_ = 0;
};

template <class T>
T ExprParser::parse_expr(const std::function<T(const std::string&)>& var, const std::function<T(i64)>& num,
                         const std::function<T(const T&)>& inv) {
  std::function<T()> expr, term, factor, atom;
  atom = [&]() -> T {
    skip_ws();
    if (accept('(')) {
      T v = expr();
      expect(')');
      return v;
    }
    u64 n;
    if (parse_uint(n)) return num(static_cast<i64>(n));
    std::string id = parse_ident();
    if (id.empty()) error("expected a number, variable or '('");
    return var(id);
  };
  factor = [&]() -> T {
    T base = atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      u64 e;
      if (!parse_uint(e)) error("expected integer exponent");
      T r = num(1);
      for (u64 k = 0; k < e; ++k) r = r * base;
      return neg ? inv(r) : r;
    }
    return base;
  };
  term = [&]() -> T {
    skip_ws();
    bool neg = false;
    while (accept('-')) neg = !neg;
    T v = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        v = v * factor();
      } else if (accept('/')) {
        v = v * inv(factor());
      } else if (!eof() && (peek('(') || std::isalpha(static_cast<unsigned char>(s_[i_])))) {
        v = v * factor();  // implicit multiplication, e.g. 2t
      } else {
        break;
      }
    }
    return neg ? num(0) - v : v;
  };
  expr = [&]() -> T {
    T v = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        break;
    }
    return v;
  };
  return expr();
}

}  // namespace detail

}  // namespace symk
