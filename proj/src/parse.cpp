#include "symk/parse.hpp"

#include <algorithm>
#include <cctype>

namespace symk {
namespace detail {

void ExprParser::skip_ws() {
  while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
}
bool ExprParser::eof() {
  skip_ws();
  return i_ >= s_.size();
}
bool ExprParser::peek(char c) {
  skip_ws();
  return i_ < s_.size() && s_[i_] == c;
}
bool ExprParser::accept(char c) {
  if (peek(c)) {
    ++i_;
    return true;
  }
  return false;
}
void ExprParser::expect(char c) {
  if (!accept(c)) error(std::string("expected '") + c + "'");
}
void ExprParser::error(const std::string& msg) const {
  fail(ErrorKind::ParseError, msg + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
}
bool ExprParser::parse_uint(u64& v) {
  skip_ws();
  if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) return false;
  v = 0;
  while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
    if (v > (1ull << 58)) error("integer literal too large");
    v = v * 10 + static_cast<u64>(s_[i_++] - '0');
  }
  return true;
}
std::string ExprParser::parse_ident() {
  skip_ws();
  std::string id;
  while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
    if (id.empty() && std::isdigit(static_cast<unsigned char>(s_[i_]))) break;
    id += s_[i_++];
  }
  return id;
}

}  // namespace detail

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n\r"), b = s.find_last_not_of(" \t\n\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

Poly parse_poly_impl(detail::ExprParser& P, FieldRef f, const std::string& var) {
  std::function<Poly(const std::string&)> v = [&](const std::string& id) -> Poly {
    if (id != var) P.error("unknown variable '" + id + "'");
    return Poly::x(f);
  };
  std::function<Poly(i64)> n = [&](i64 c) { return Poly::constant(f->from_int(c)); };
  std::function<Poly(const Poly&)> inv = [&](const Poly& a) -> Poly {
    if (a.degree() != 0) P.error("division by a non-constant polynomial");
    return Poly::constant(inverse(a.coeff(0)));
  };
  return P.parse_expr<Poly>(v, n, inv);
}

Elem parse_elem_expr(detail::ExprParser& P, FieldRef f) {
  std::function<Elem(const std::string&)> v = [&](const std::string& id) -> Elem {
    if (id != "x" && id != "z") P.error("unknown variable '" + id + "'");
    return f->gen();
  };
  std::function<Elem(i64)> n = [&](i64 c) { return f->from_int(c); };
  std::function<Elem(const Elem&)> inv = [&](const Elem& a) -> Elem {
    if (a.is_zero()) P.error("division by zero");
    return inverse(a);
  };
  return P.parse_expr<Elem>(v, n, inv);
}

}  // namespace

FieldRef parse_field(const std::string& s0) {
  detail::ExprParser P(trim(s0));
  std::string id = P.parse_ident();
  if (id != "GF" && id != "F") P.error("expected GF(...)");
  P.expect('(');
  u64 q;
  if (!P.parse_uint(q)) P.error("expected field order");
  auto fac = factor_u64(q);
  if (fac.size() != 1) P.error("field order must be a prime power");
  u64 p = fac[0].first;
  int n = fac[0].second;
  FieldRef f;
  if (P.accept(',')) {
    Poly m = parse_poly_impl(P, GF::prime(p), "x");
    if (m.degree() != n) P.error("modulus degree does not match field order");
    if (!m.is_monic()) P.error("modulus must be monic");
    std::vector<u32> c;
    for (auto& e : m.coeffs()) c.push_back(e.coeff(0));
    f = GF::extension(p, c);
  } else {
    f = GF::standard(p, n);
  }
  P.expect(')');
  if (!P.eof()) P.error("trailing characters");
  return f;
}

Elem parse_element(const std::string& s0, FieldRef field) {
  std::string s = trim(s0);
  auto mod = s.find(" mod ");
  if (mod != std::string::npos) {
    u64 p = std::stoull(trim(s.substr(mod + 5)));
    FieldRef f = GF::prime(p);
    detail::ExprParser P(s.substr(0, mod));
    Elem e = parse_elem_expr(P, f);
    if (!P.eof()) P.error("trailing characters");
    return e;
  }
  auto in = s.find(" in ");
  if (in != std::string::npos) {
    field = parse_field(s.substr(in + 4));
    s = s.substr(0, in);
  }
  if (!field) fail(ErrorKind::ParseError, "element \"" + s0 + "\" needs a field");
  detail::ExprParser P(s);
  Elem e = parse_elem_expr(P, field);
  if (!P.eof()) P.error("trailing characters");
  return e;
}

Poly parse_poly(const std::string& s, FieldRef field, const std::string& var) {
  detail::ExprParser P(trim(s));
  Poly r = parse_poly_impl(P, field, var);
  if (!P.eof()) P.error("trailing characters");
  return r;
}

CurveRef parse_curve(const std::string& s0) {
  std::string s = trim(s0);
  if (s.rfind("P1/", 0) == 0) return p1_curve(parse_field(s.substr(3)));
  if (s.size() > 3 && s.substr(s.size() - 3) == "(t)") return p1_curve(parse_field(s.substr(0, s.size() - 3)));
  if (s.rfind("E/", 0) == 0) {
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(ErrorKind::ParseError, "elliptic curve literal needs ': y^2 = ...'");
    FieldRef k = parse_field(s.substr(2, colon - 2));
    std::string eq = s.substr(colon + 1);
    auto eqpos = eq.find('=');
    if (eqpos == std::string::npos) fail(ErrorKind::ParseError, "missing '=' in curve equation");
    std::string lhs = trim(eq.substr(0, eqpos));
    lhs.erase(std::remove(lhs.begin(), lhs.end(), ' '), lhs.end());
    if (lhs != "y^2") fail(ErrorKind::ParseError, "curve equation must read y^2 = x^3 + a*x + b");
    Poly r = parse_poly(eq.substr(eqpos + 1), k, "x");
    if (r.degree() != 3 || !r.lead().is_one() || !r.coeff(2).is_zero())
      fail(ErrorKind::ParseError, "right side must be x^3 + a*x + b");
    return elliptic_curve(k, r.coeff(1), r.coeff(0));
  }
  fail(ErrorKind::ParseError, "unknown curve literal \"" + s0 + "\"");
}

Function parse_function(const std::string& s, const CurveRef& C) {
  detail::ExprParser P(trim(s));
  std::function<Function(const std::string&)> v = [&](const std::string& id) -> Function {
    if (C->is_p1()) {
      if (id == "t") return Function::variable(C);
    } else {
      if (id == "x") return Function::variable(C);
      if (id == "y") return Function::y(C);
    }
    P.error("unknown variable '" + id + "'");
  };
  std::function<Function(i64)> n = [&](i64 c) { return Function::from_int(C, c); };
  std::function<Function(const Function&)> inv = [&](const Function& a) -> Function {
    if (a.is_zero()) P.error("division by zero");
    return a.inverse();
  };
  Function f = P.parse_expr<Function>(v, n, inv);
  if (!P.eof()) P.error("trailing characters");
  return f;
}

EPoint parse_point(const std::string& s0, const CurveRef& E, int degree) {
  std::string s = trim(s0);
  if (s == "O" || s == "inf") return EPoint::infinity();
  FieldRef F = GF::standard(E->base->characteristic(), degree);
  detail::ExprParser P(s);
  P.expect('(');
  Elem x = parse_elem_expr(P, F);
  P.expect(',');
  Elem y = parse_elem_expr(P, F);
  P.expect(')');
  if (!P.eof()) P.error("trailing characters");
  EPoint pt = EPoint::affine(x, y);
  if (!on_curve(*E, pt)) fail(ErrorKind::ParseError, "point " + s + " is not on " + E->to_string());
  return pt;
}

Place parse_place(const std::string& s0, const CurveRef& C) {
  std::string s = trim(s0);
  if (s == "inf" || s == "∞") return C->is_p1() ? p1_infinity(C) : elliptic_infinity(C);
  if (C->is_p1()) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail(ErrorKind::ParseError, "P1 place must read (poly) or inf");
    Poly pi = parse_poly(s.substr(1, s.size() - 2), C->base, "t");
    if (!pi.is_monic() || !is_irreducible(pi)) fail(ErrorKind::ParseError, "place polynomial must be monic irreducible");
    return p1_place(C, pi);
  }
  if (s.empty() || s.front() != '[') fail(ErrorKind::ParseError, "elliptic place must read [(x,y)]@E");
  auto close = s.find(']');
  if (close == std::string::npos || s.substr(close + 1, 2) != "@E") fail(ErrorKind::ParseError, "elliptic place must read [(x,y)]@E");
  int degree = 1;
  std::string rest = s.substr(close + 3);
  if (!rest.empty()) {
    if (rest[0] != '/') fail(ErrorKind::ParseError, "expected /degree after @E");
    degree = std::stoi(rest.substr(1));
  }
  EPoint P = parse_point(s.substr(1, close - 1), C, degree);
  Place v = elliptic_place(C, P);
  return v;
}

}  // namespace symk
