#include "symk/curve.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace symk {

Poly Curve::rhs() const {
  FieldRef f = base;
  return Poly(f, {b, a, f->zero(), f->one()});
}

std::string Curve::to_string() const {
  if (is_p1()) return "P1/" + base->to_string();
  std::ostringstream os;
  os << "E/" << base->to_string() << ": y^2 = x^3";
  if (!a.is_zero()) os << " + " << (a.is_one() ? "" : symk::to_string(a) + "*") << "x";
  if (!b.is_zero()) os << " + " << symk::to_string(b);
  return os.str();
}

bool Curve::operator==(const Curve& o) const {
  if (kind != o.kind || base != o.base) return false;
  return is_p1() || (a == o.a && b == o.b);
}

CurveRef p1_curve(FieldRef base) {
  require(base->is_prime_field(), ErrorKind::Unsupported, "curves are supported over prime fields only");
  auto c = std::make_shared<Curve>();
  c->kind = Curve::Kind::P1;
  c->base = base;
  return c;
}

CurveRef elliptic_curve(FieldRef base, const Elem& a, const Elem& b) {
  require(base->is_prime_field(), ErrorKind::Unsupported, "curves are supported over prime fields only");
  require(base->characteristic() >= 5, ErrorKind::Unsupported, "elliptic curves need p >= 5");
  Elem disc = base->from_int(4) * a * a * a + base->from_int(27) * b * b;
  require(!disc.is_zero(), ErrorKind::ConditionViolated, "singular Weierstrass equation");
  auto c = std::make_shared<Curve>();
  c->kind = Curve::Kind::Elliptic;
  c->base = base;
  c->a = a;
  c->b = b;
  return c;
}

bool same_curve(const CurveRef& x, const CurveRef& y) { return x == y || (x && y && *x == *y); }

bool EPoint::operator==(const EPoint& o) const {
  if (inf || o.inf) return inf == o.inf;
  return x == o.x && y == o.y;
}

bool EPoint::operator<(const EPoint& o) const {
  if (inf != o.inf) return inf;
  if (inf) return false;
  if (x.index() != o.x.index()) return x.index() < o.x.index();
  return y.index() < o.y.index();
}

std::string EPoint::to_string(const std::string& var) const {
  if (inf) return "O";
  return "(" + symk::to_string(x, var) + "," + symk::to_string(y, var) + ")";
}

namespace {
Elem lift_const(const Elem& c, FieldRef F) { return embedding(c.field(), F).apply(c); }
}  // namespace

bool on_curve(const Curve& E, const EPoint& P) {
  if (P.inf) return true;
  FieldRef F = P.x.field();
  return P.y * P.y == P.x * P.x * P.x + lift_const(E.a, F) * P.x + lift_const(E.b, F);
}

EPoint ec_neg(const EPoint& P) {
  if (P.inf) return P;
  return EPoint::affine(P.x, -P.y);
}

EPoint ec_add(const Curve& E, const EPoint& P, const EPoint& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  FieldRef F = P.x.field();
  if (Q.x.field() != F) fail(ErrorKind::FieldMismatch, "points over different fields");
  Elem lam;
  if (P.x == Q.x) {
    if ((P.y + Q.y).is_zero()) return EPoint::infinity();
    lam = (F->from_int(3) * P.x * P.x + lift_const(E.a, F)) / (F->from_int(2) * P.y);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  Elem x3 = lam * lam - P.x - Q.x;
  Elem y3 = lam * (P.x - x3) - P.y;
  return EPoint::affine(x3, y3);
}

EPoint ec_mul(const Curve& E, const EPoint& P, i64 k) {
  EPoint base = k < 0 ? ec_neg(P) : P;
  u64 n = static_cast<u64>(k < 0 ? -k : k);
  EPoint r = EPoint::infinity();
  while (n) {
    if (n & 1) r = ec_add(E, r, base);
    n >>= 1;
    if (n) base = ec_add(E, base, base);
  }
  return r;
}

EPoint ec_map(const EPoint& P, const Embedding& e) {
  if (P.inf) return P;
  return EPoint::affine(e.apply(P.x), e.apply(P.y));
}

EPoint ec_preimage(const EPoint& P, const Embedding& e) {
  if (P.inf) return P;
  return EPoint::affine(e.preimage(P.x), e.preimage(P.y));
}

EPoint ec_frobenius(const EPoint& P, int k) {
  if (P.inf) return P;
  return EPoint::affine(frobenius(P.x, k), frobenius(P.y, k));
}

EPoint ec_in_field(const EPoint& P, FieldRef F) {
  if (P.inf || P.x.field() == F) return P;
  FieldRef G = P.x.field();
  if (F->degree() % G->degree() == 0) return ec_map(P, embedding(G, F));
  return ec_preimage(P, embedding(F, G));
}

int point_degree(const EPoint& P) {
  if (P.inf) return 1;
  return static_cast<int>(lcm_u64(element_degree(P.x), element_degree(P.y)));
}

std::vector<EPoint> enumerate_points(const Curve& E, int d) {
  require(!E.is_p1(), ErrorKind::ConditionViolated, "point enumeration needs an elliptic curve");
  u64 p = E.base->characteristic();
  u64 q = checked_pow(p, d);
  require(q != 0 && q <= 1000000, ErrorKind::TooLarge, "q^d exceeds the enumeration guard 10^6");
  FieldRef F = GF::standard(p, d);
  Elem a = lift_const(E.a, F), b = lift_const(E.b, F);
  std::vector<EPoint> pts{EPoint::infinity()};
  for (u64 i = 0; i < q; ++i) {
    Elem x = F->from_index(i);
    Elem r = x * x * x + a * x + b;
    if (r.is_zero()) {
      pts.push_back(EPoint::affine(x, r));
    } else if (is_square(r)) {
      Elem s = sqrt(r), t = -s;
      if (t < s) std::swap(s, t);
      pts.push_back(EPoint::affine(x, s));
      pts.push_back(EPoint::affine(x, t));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// ---------------------------------------------------------------- places

FieldRef Place::residue_field() const {
  if (curve->is_p1()) return kind == Kind::Infinity ? curve->base : residue_field_of(pi);
  if (kind == Kind::EllipticInfinity) return curve->base;
  return GF::standard(curve->base->characteristic(), degree);
}

Elem Place::eval_poly(const Poly& g) const {
  if (curve->is_p1()) return residue_of(g, pi);
  return pmap->apply(residue_of(g, pi));
}

std::string Place::to_string() const {
  switch (kind) {
    case Kind::Finite: return "(" + pi.to_string("t") + ")";
    case Kind::Infinity:
    case Kind::EllipticInfinity: return "inf";
    default: {
      std::string s = "[" + rep.to_string("z") + "]@E";
      if (degree > 1) s += "/" + std::to_string(degree);
      return s;
    }
  }
}

bool Place::operator==(const Place& o) const {
  if (kind != o.kind || degree != o.degree) return false;
  if (is_infinite()) return true;
  return pi == o.pi && s == o.s;
}

bool Place::operator<(const Place& o) const {
  if (degree != o.degree) return degree < o.degree;
  if (is_infinite() != o.is_infinite()) return o.is_infinite();
  if (is_infinite()) return false;
  if (pi != o.pi) return pi < o.pi;
  if (s != o.s) return s < o.s;
  return static_cast<int>(kind) < static_cast<int>(o.kind);
}

Place p1_place(const CurveRef& C, const Poly& pi) {
  require(C->is_p1(), ErrorKind::ConditionViolated, "polynomial places live on P1");
  require(pi.is_monic() && is_irreducible(pi), ErrorKind::ConditionViolated, "place polynomial must be monic irreducible");
  Place v;
  v.curve = C;
  v.kind = Place::Kind::Finite;
  v.pi = pi;
  v.degree = pi.degree();
  return v;
}

Place p1_infinity(const CurveRef& C) {
  Place v;
  v.curve = C;
  v.kind = Place::Kind::Infinity;
  v.degree = 1;
  return v;
}

Place elliptic_infinity(const CurveRef& E) {
  Place v;
  v.curve = E;
  v.kind = Place::Kind::EllipticInfinity;
  v.degree = 1;
  v.rep = EPoint::infinity();
  return v;
}

namespace {

// Build the place with kind, pi, s and residue degree; chooses the least orbit point.
Place finish_elliptic(const CurveRef& E, Place::Kind kind, const Poly& pi, const Poly& s) {
  Place v;
  v.curve = E;
  v.kind = kind;
  v.pi = pi;
  v.s = s;
  v.degree = kind == Place::Kind::Inert ? 2 * pi.degree() : pi.degree();
  u64 p = E->base->characteristic();
  FieldRef F = GF::standard(p, v.degree);
  FieldRef K = residue_field_of(pi);
  std::vector<Elem> mc;
  for (auto& c : pi.coeffs()) mc.push_back(F->from_int(c.coeff(0)));
  auto xs = roots(Poly(F, mc));
  require(!xs.empty(), ErrorKind::Internal, "place polynomial has no root in residue field");
  const Embedding& fp = embedding(E->base, F);
  Elem a = fp.apply(E->a), b = fp.apply(E->b);
  bool have = false;
  EPoint best;
  for (auto& x0 : xs) {
    std::vector<Elem> ys;
    if (kind == Place::Kind::Ramified) {
      ys.push_back(F->zero());
    } else if (kind == Place::Kind::Split) {
      ys.push_back(s.eval_in(x0, fp));
    } else {
      Elem y0 = sqrt(x0 * x0 * x0 + a * x0 + b);
      ys.push_back(y0);
      ys.push_back(-y0);
    }
    for (auto& y0 : ys) {
      EPoint P = EPoint::affine(x0, y0);
      if (!have || P < best) {
        best = P;
        have = true;
      }
    }
  }
  v.rep = best;
  v.pmap = std::make_shared<Embedding>(K, F, K->degree() == 1 ? F->zero() : best.x);
  return v;
}

}  // namespace

std::vector<Place> places_over(const CurveRef& C, const Poly& pi) {
  if (C->is_p1()) return {p1_place(C, pi)};
  FieldRef K = residue_field_of(pi);
  Elem r = residue_of(C->rhs(), pi);
  std::vector<Place> out;
  if (r.is_zero()) {
    out.push_back(finish_elliptic(C, Place::Kind::Ramified, pi, Poly(C->base)));
  } else if (is_square(r)) {
    Elem s1 = sqrt(r), s2 = -s1;
    for (auto& s : {s1, s2}) out.push_back(finish_elliptic(C, Place::Kind::Split, pi, lift_residue(s, pi)));
    std::sort(out.begin(), out.end());
  } else {
    out.push_back(finish_elliptic(C, Place::Kind::Inert, pi, Poly(C->base)));
  }
  (void)K;
  return out;
}

Place elliptic_place(const CurveRef& E, const EPoint& P) {
  if (P.inf) return elliptic_infinity(E);
  require(on_curve(*E, P), ErrorKind::ConditionViolated, "point not on curve");
  std::vector<u32> m = minimal_polynomial_fp(P.x);
  std::vector<Elem> mc;
  for (u32 c : m) mc.push_back(E->base->from_int(c));
  Poly pi(E->base, mc);
  auto cands = places_over(E, pi);
  if (cands.size() == 1) return cands[0];
  // split: identify by y = s(x)
  const Embedding& fp = embedding(E->base, P.x.field());
  for (auto& v : cands)
    if (v.s.eval_in(P.x, fp) == P.y) return v;
  fail(ErrorKind::Internal, "point matches no place over its abscissa");
}

std::vector<Place> places_of_degree(const CurveRef& C, int d) {
  require(d >= 1, ErrorKind::ConditionViolated, "place degree must be positive");
  u64 p = C->base->characteristic();
  std::vector<Place> out;
  if (C->is_p1()) {
    u64 q = checked_pow(p, d);
    require(q != 0 && q <= 1000000, ErrorKind::TooLarge, "q^d exceeds the enumeration guard 10^6");
    for (u64 idx = 0; idx < q; ++idx) {
      std::vector<Elem> c;
      u64 t = idx;
      for (int i = 0; i < d; ++i) {
        c.push_back(C->base->from_int(static_cast<i64>(t % p)));
        t /= p;
      }
      c.push_back(C->base->one());
      Poly f(C->base, c);
      if (is_irreducible(f)) out.push_back(p1_place(C, f));
    }
    if (d == 1) out.push_back(p1_infinity(C));
  } else {
    std::set<Place> seen;
    for (auto& P : enumerate_points(*C, d)) {
      if (P.inf || point_degree(P) != d) continue;
      seen.insert(elliptic_place(C, P));
    }
    out.assign(seen.begin(), seen.end());
    if (d == 1) out.push_back(elliptic_infinity(C));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Place least_place(const CurveRef& C) { return places_of_degree(C, 1).front(); }

// ---------------------------------------------------------------- functions

Function Function::make(const CurveRef& C, const Poly& a0, const Poly& b0, const Poly& d0) {
  if (d0.is_zero()) fail(ErrorKind::DivisionByZero, "function with zero denominator");
  FieldRef k = C->base;
  Function f;
  f.c_ = C;
  Poly a = a0, b = C->is_p1() ? Poly(k) : b0, d = d0;
  if (a.is_zero() && b.is_zero()) {
    f.a_ = Poly(k);
    f.b_ = Poly(k);
    f.d_ = Poly::constant(k->one());
    return f;
  }
  Poly g = gcd(gcd(a, b), d);
  if (g.degree() > 0) {
    a = a / g;
    b = b / g;
    d = d / g;
  }
  Elem inv = symk::inverse(d.lead());
  f.a_ = a * inv;
  f.b_ = b * inv;
  f.d_ = d * inv;
  return f;
}

Function Function::constant(const CurveRef& C, const Elem& c) {
  FieldRef k = C->base;
  return make(C, Poly::constant(c), Poly(k), Poly::constant(k->one()));
}
Function Function::from_int(const CurveRef& C, i64 c) { return constant(C, C->base->from_int(c)); }
Function Function::from_poly(const CurveRef& C, const Poly& a) {
  return make(C, a, Poly(C->base), Poly::constant(C->base->one()));
}
Function Function::variable(const CurveRef& C) { return from_poly(C, Poly::x(C->base)); }
Function Function::y(const CurveRef& E) {
  require(!E->is_p1(), ErrorKind::ConditionViolated, "y exists only on elliptic curves");
  FieldRef k = E->base;
  return make(E, Poly(k), Poly::constant(k->one()), Poly::constant(k->one()));
}

Elem Function::constant_value() const {
  require(is_constant(), ErrorKind::ConditionViolated, "function is not constant");
  return a_.is_zero() ? c_->base->zero() : a_.coeff(0);
}

static void check_same(const Function& x, const Function& y) {
  if (!same_curve(x.curve(), y.curve())) fail(ErrorKind::FieldMismatch, "functions on different curves");
}

Function Function::operator+(const Function& o) const {
  check_same(*this, o);
  if (d_ == o.d_) return make(c_, a_ + o.a_, b_ + o.b_, d_);
  return make(c_, a_ * o.d_ + o.a_ * d_, b_ * o.d_ + o.b_ * d_, d_ * o.d_);
}

Function Function::operator-(const Function& o) const { return *this + (-o); }

Function Function::operator-() const { return make(c_, -a_, -b_, d_); }

Function Function::operator*(const Function& o) const {
  check_same(*this, o);
  if (c_->is_p1()) return make(c_, a_ * o.a_, b_, d_ * o.d_);
  Poly f = c_->rhs();
  return make(c_, a_ * o.a_ + b_ * o.b_ * f, a_ * o.b_ + o.a_ * b_, d_ * o.d_);
}

Function Function::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of the zero function");
  if (c_->is_p1()) return make(c_, d_, b_, a_);
  Poly n = a_ * a_ - b_ * b_ * c_->rhs();
  return make(c_, a_ * d_, -(b_ * d_), n);
}

Function Function::operator/(const Function& o) const { return *this * o.inverse(); }

Function Function::pow(i64 e) const {
  Function base = e < 0 ? inverse() : *this;
  u64 n = static_cast<u64>(e < 0 ? -e : e);
  Function r = from_int(c_, 1);
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

bool Function::operator==(const Function& o) const {
  return same_curve(c_, o.c_) && a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
}

bool Function::operator<(const Function& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  return d_ < o.d_;
}

std::pair<Poly, Poly> Function::norm_to_x() const {
  if (c_->is_p1() || b_.is_zero()) return {a_ * a_, d_ * d_};
  return {a_ * a_ - b_ * b_ * c_->rhs(), d_ * d_};
}

std::string Function::to_string() const {
  std::string var = c_->is_p1() ? "t" : "x";
  auto has = [](const std::string& s, const char* chars) { return s.find_first_of(chars) != std::string::npos; };
  std::string num;
  if (b_.is_zero()) {
    num = a_.to_string(var);
  } else {
    std::string bs = b_.to_string(var);
    std::string yb = b_.is_one() ? "y" : (has(bs, "+") ? "(" + bs + ")" : bs) + "*y";
    num = a_.is_zero() ? yb : a_.to_string(var) + "+" + yb;
  }
  if (d_.is_one()) return num;
  std::string den = d_.to_string(var);
  return (has(num, "+") ? "(" + num + ")" : num) + "/" + (has(den, "+*") ? "(" + den + ")" : den);
}

// ---------------------------------------------------------------- valuations

namespace {

// s_K with s_K^2 = rhs mod pi^K, lifting s mod pi.
Poly hensel_sqrt(const Poly& s, const Poly& rhs, const Poly& pi, int K) {
  Poly cur = s;
  int prec = 1;
  FieldRef k = pi.field();
  while (prec < K) {
    prec = std::min(2 * prec, K);
    Poly m = pow(pi, static_cast<unsigned>(prec));
    Poly err = (cur * cur - rhs) % m;
    Poly inv = invmod(cur * k->from_int(2), m);
    cur = (cur - mulmod(err, inv, m)) % m;
  }
  return cur;
}

int val_or(const Poly& a, const Poly& pi, int none) { return a.is_zero() ? none : valuation(a, pi); }

}  // namespace

int valuation(const Function& f, const Place& v) {
  if (f.is_zero()) fail(ErrorKind::ZeroFunction, "valuation of the zero function");
  const Poly &a = f.a(), &b = f.b(), &d = f.d();
  constexpr int kBig = 1 << 28;
  switch (v.kind) {
    case Place::Kind::Finite: return valuation(a, v.pi) - valuation(d, v.pi);
    case Place::Kind::Infinity: return d.degree() - a.degree();
    case Place::Kind::EllipticInfinity: {
      int va = a.is_zero() ? kBig : -2 * a.degree();
      int vb = b.is_zero() ? kBig : -2 * b.degree() - 3;
      return std::min(va, vb) + 2 * d.degree();
    }
    case Place::Kind::Inert:
      return std::min(val_or(a, v.pi, kBig), val_or(b, v.pi, kBig)) - valuation(d, v.pi);
    case Place::Kind::Ramified: {
      int va = a.is_zero() ? kBig : 2 * valuation(a, v.pi);
      int vb = b.is_zero() ? kBig : 2 * valuation(b, v.pi) + 1;
      return std::min(va, vb) - 2 * valuation(d, v.pi);
    }
    case Place::Kind::Split: {
      int vd = valuation(d, v.pi);
      if (b.is_zero()) return valuation(a, v.pi) - vd;
      if (a.is_zero()) return valuation(b, v.pi) - vd;  // y is a unit at split places
      auto [N, D2] = f.norm_to_x();
      (void)D2;
      int K = valuation(N, v.pi) + 1;
      Poly sK = hensel_sqrt(v.s, f.curve()->rhs(), v.pi, K);
      Poly m = pow(v.pi, static_cast<unsigned>(K));
      Poly r = (a + b * sK) % m;
      return valuation(r, v.pi) - vd;
    }
  }
  return 0;
}

Elem reduce_at(const Function& f, const Place& v) {
  FieldRef kv = v.residue_field();
  if (f.is_zero()) return kv->zero();
  int val = valuation(f, v);
  if (val < 0) fail(ErrorKind::PoleAtPlace, "function " + f.to_string() + " has a pole at " + v.to_string());
  if (val > 0) return kv->zero();
  const Poly &a = f.a(), &b = f.b(), &d = f.d();
  switch (v.kind) {
    case Place::Kind::Infinity:
    case Place::Kind::EllipticInfinity: return a.lead() / d.lead();
    case Place::Kind::Finite: {
      int m = valuation(d, v.pi);
      return residue_of(strip(a, v.pi, m), v.pi) / residue_of(strip(d, v.pi, m), v.pi);
    }
    case Place::Kind::Ramified:
    case Place::Kind::Inert: {
      int m = valuation(d, v.pi);
      Elem num = v.eval_poly(strip(a, v.pi, m));
      if (!b.is_zero()) num = num + v.eval_poly(strip(b, v.pi, m)) * v.rep.y;
      return num / v.eval_poly(strip(d, v.pi, m));
    }
    case Place::Kind::Split: {
      int m = valuation(d, v.pi);
      Poly sK = hensel_sqrt(v.s, f.curve()->rhs(), v.pi, m + 1);
      Poly mod = pow(v.pi, static_cast<unsigned>(m + 1));
      Poly r = (a + b * sK) % mod;
      return v.eval_poly(strip(r, v.pi, m)) / v.eval_poly(strip(d, v.pi, m));
    }
  }
  return kv->zero();
}

Function uniformizer(const Place& v) {
  const CurveRef& C = v.curve;
  switch (v.kind) {
    case Place::Kind::Finite:
    case Place::Kind::Split:
    case Place::Kind::Inert: return Function::from_poly(C, v.pi);
    case Place::Kind::Infinity: return Function::variable(C).inverse();
    case Place::Kind::Ramified: return Function::y(C);
    case Place::Kind::EllipticInfinity: return Function::variable(C) / Function::y(C);
  }
  return Function::from_int(C, 1);
}

// ---------------------------------------------------------------- divisors

void Divisor::add(const Place& P, i64 m) {
  if (m == 0) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), P, [](const auto& e, const Place& q) { return e.first < q; });
  if (it != t_.end() && it->first == P) {
    it->second += m;
    if (it->second == 0) t_.erase(it);
  } else {
    t_.insert(it, {P, m});
  }
}

i64 Divisor::degree() const {
  i64 s = 0;
  for (auto& [P, m] : t_) s += m * P.degree;
  return s;
}

i64 Divisor::multiplicity(const Place& P) const {
  for (auto& [Q, m] : t_)
    if (Q == P) return m;
  return 0;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  if (!r.c_) r.c_ = o.c_;
  for (auto& [P, m] : o.t_) r.add(P, m);
  return r;
}

bool Divisor::operator==(const Divisor& o) const { return t_ == o.t_; }

std::string Divisor::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [P, m] : t_) {
    i64 a = m < 0 ? -m : m;
    if (first)
      os << (m < 0 ? "-" : "");
    else
      os << (m < 0 ? " - " : " + ");
    first = false;
    if (a != 1) os << a << "*";
    os << P.to_string();
  }
  return os.str();
}

std::vector<Place> support(const Function& f) {
  std::vector<Place> out;
  Divisor D = divisor(f);
  for (auto& [P, m] : D.terms()) out.push_back(P);
  return out;
}

Divisor divisor(const Function& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroFunction, "divisor of the zero function");
  const CurveRef& C = f.curve();
  Divisor D(C);
  std::set<Poly> primes;
  Poly num = C->is_p1() || f.b().is_zero() ? f.a() : f.norm_to_x().first;
  for (auto& [p, e] : factor(num).factors) primes.insert(p);
  for (auto& [p, e] : factor(f.d()).factors) primes.insert(p);
  for (auto& pi : primes)
    for (auto& v : places_over(C, pi)) D.add(v, valuation(f, v));
  Place inf = C->is_p1() ? p1_infinity(C) : elliptic_infinity(C);
  i64 vinf = valuation(f, inf);
  D.add(inf, vinf);
  if (D.degree() != 0) fail(ErrorKind::Internal, "principal divisor of nonzero degree: " + D.to_string());
  return D;
}

std::vector<Place> zeros_of(const Function& f) {
  std::vector<Place> out;
  Divisor D = divisor(f);
  for (auto& [P, m] : D.terms())
    if (m > 0) out.push_back(P);
  return out;
}

}  // namespace symk
