#include "symk/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace symk {

Poly::Poly(FieldRef f, std::vector<Elem> c) : f_(f), c_(std::move(c)) {
  for (auto& e : c_)
    if (e.field() != f_) fail(ErrorKind::FieldMismatch, "polynomial coefficient in wrong field");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Elem& c) { return Poly(c.field(), {c}); }
Poly Poly::x(FieldRef f) { return Poly(f, {f->zero(), f->one()}); }
Poly Poly::linear(const Elem& root) { return Poly(root.field(), {-root, root.field()->one()}); }
Poly Poly::monomial(const Elem& c, int k) {
  std::vector<Elem> v(k + 1, c.field()->zero());
  v[k] = c;
  return Poly(c.field(), v);
}
Poly Poly::from_ints(FieldRef f, const std::vector<i64>& c) {
  std::vector<Elem> v;
  for (i64 x : c) v.push_back(f->from_int(x));
  return Poly(f, v);
}

Elem Poly::coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : f_->zero(); }
Elem Poly::lead() const {
  if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Elem inv = inverse(c_.back());
  return *this * inv;
}

Poly Poly::operator+(const Poly& o) const {
  if (f_ != o.f_) fail(ErrorKind::FieldMismatch, "polynomial fields differ");
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), f_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = f_->add(r[i], o.c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  if (f_ != o.f_) fail(ErrorKind::FieldMismatch, "polynomial fields differ");
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), f_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = f_->sub(r[i], o.c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& e : r.c_) e = f_->neg(e);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (f_ != o.f_) fail(ErrorKind::FieldMismatch, "polynomial fields differ");
  if (c_.empty() || o.c_.empty()) return Poly(f_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, f_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Elem& c) const {
  if (c.field() != f_) fail(ErrorKind::FieldMismatch, "scalar in wrong field");
  std::vector<Elem> r = c_;
  for (auto& e : r) e = f_->mul(e, c);
  return Poly(f_, std::move(r));
}

Poly Poly::operator/(const Poly& o) const {
  auto [q, r] = divmod(*this, o);
  if (!r.is_zero()) fail(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

Poly Poly::operator%(const Poly& o) const { return divmod(*this, o).second; }

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i].index() < o.c_[i].index();
  return false;
}

Elem Poly::eval(const Elem& a) const {
  if (a.field() != f_) fail(ErrorKind::FieldMismatch, "evaluation point in wrong field");
  Elem r = f_->zero();
  for (int i = degree(); i >= 0; --i) r = f_->add(f_->mul(r, a), c_[i]);
  return r;
}

Elem Poly::eval_in(const Elem& a, const Embedding& e) const {
  FieldRef g = a.field();
  Elem r = g->zero();
  for (int i = degree(); i >= 0; --i) r = g->add(g->mul(r, a), e.apply(c_[i]));
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Elem> r(c_.size() - 1, f_->zero());
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->scale(c_[i], i);
  return Poly(f_, std::move(r));
}

Poly Poly::map_coeffs(const Embedding& e) const {
  std::vector<Elem> r;
  for (auto& c : c_) r.push_back(e.apply(c));
  return Poly(e.dst(), std::move(r));
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  bool prime = f_->is_prime_field();
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Elem& c = c_[i];
    if (c.is_zero()) continue;
    std::string cs = symk::to_string(c, "x");
    bool compound = !prime && cs.find('+') != std::string::npos;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (!c.is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.field() != b.field()) fail(ErrorKind::FieldMismatch, "polynomial fields differ");
  FieldRef f = a.field();
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Elem> r = a.coeffs();
  std::vector<Elem> q(a.degree() - b.degree() + 1, f->zero());
  Elem inv = inverse(b.lead());
  int db = b.degree();
  const auto& bc = b.coeffs();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    Elem c = f->mul(r[k], inv);
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] = f->sub(r[k - db + j], f->mul(c, bc[j]));
  }
  r.resize(db);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly gcd(const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  FieldRef f = a.field();
  Poly r0 = a, r1 = b, s0 = Poly::constant(f->one()), s1(f), t0(f), t1 = Poly::constant(f->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  Elem inv = inverse(r0.lead());
  g = r0 * inv;
  s = s0 * inv;
  t = t0 * inv;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const Int& e, const Poly& m) {
  FieldRef f = m.field();
  Poly r = Poly::constant(f->one()) % m;
  Poly b = base % m;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
  }
  return r;
}

Poly invmod(const Poly& a, const Poly& m) {
  Poly g, s, t;
  ext_gcd(a % m, m, g, s, t);
  if (g.degree() != 0) fail(ErrorKind::DivisionByZero, "polynomial not invertible modulo " + m.to_string());
  return s % m;
}

Poly pow(const Poly& a, unsigned e) {
  Poly r = Poly::constant(a.field()->one()), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

int valuation(const Poly& a, const Poly& pi) {
  if (a.is_zero()) fail(ErrorKind::ZeroFunction, "valuation of zero");
  int v = 0;
  Poly t = a;
  for (;;) {
    auto [q, r] = divmod(t, pi);
    if (!r.is_zero()) return v;
    t = std::move(q);
    ++v;
  }
}

Poly strip(const Poly& a, const Poly& pi, int k) {
  Poly t = a;
  for (int i = 0; i < k; ++i) t = t / pi;
  return t;
}

namespace {

Int field_order_int(FieldRef f) { return Int(std::to_string(f->order())); }

// x^q mod g for the coefficient field order q.
Poly frob_x(const Poly& h, const Poly& g) { return powmod(h, field_order_int(g.field()), g); }

Poly pth_root(const Poly& c) {
  FieldRef f = c.field();
  u64 p = f->characteristic();
  std::vector<Elem> out;
  for (int i = 0; i <= c.degree(); i += static_cast<int>(p)) out.push_back(frobenius(c.coeff(i), f->degree() - 1));
  return Poly(f, out);
}

void squarefree(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  FieldRef F = f.field();
  Poly one = Poly::constant(F->one());
  if (f.degree() <= 0) return;
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c).monic(), mult * static_cast<int>(F->characteristic()), out);
}

void equal_degree(const Poly& t, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (t.degree() == d) {
    out.push_back(t.monic());
    return;
  }
  FieldRef F = t.field();
  u64 q = F->order();
  int n = t.degree();
  for (;;) {
    std::vector<Elem> rc;
    for (int i = 0; i < n; ++i) rc.push_back(F->from_index(rng() % q));
    Poly r(F, rc);
    if (r.degree() <= 0) continue;
    Poly w(F);
    if (F->characteristic() == 2) {
      Poly acc = r % t, cur = r % t;
      for (int i = 1; i < F->degree() * d; ++i) {
        cur = mulmod(cur, cur, t);
        acc = acc + cur;
      }
      w = acc;
    } else {
      Int e = (pow_int(q, d) - 1) / 2;
      w = powmod(r, e, t) - Poly::constant(F->one());
    }
    Poly g = gcd(t, w);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(t / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "irreducibility of zero");
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly g = f.monic();
  Poly x = Poly::x(f.field());
  Poly h = x;
  std::vector<Poly> pw{x};
  for (int i = 1; i <= n; ++i) {
    h = frob_x(h, g);
    pw.push_back(h);
  }
  if (pw[n] != x % g) return false;
  for (auto [r, e] : factor_u64(static_cast<u64>(n))) {
    (void)e;
    Poly d = pw[n / r] - x;
    if (gcd(g, d).degree() != 0) return false;
  }
  return true;
}

Poly Factorization::expand() const {
  Poly r = Poly::constant(lead);
  for (auto& [p, e] : factors) r = r * pow(p, static_cast<unsigned>(e));
  return r;
}

Factorization factor(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factor of zero polynomial");
  FieldRef F = f.field();
  Factorization res;
  res.lead = f.lead();
  std::vector<std::pair<Poly, int>> sqf;
  squarefree(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eedf00dULL ^ static_cast<u64>(f.degree()));
  std::map<Poly, int> acc;
  for (auto& [g0, m] : sqf) {
    Poly g = g0;
    Poly x = Poly::x(F);
    Poly h = x % g;
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = frob_x(h, g);
      Poly t = gcd(g, h - x);
      if (t.degree() > 0) {
        std::vector<Poly> parts;
        equal_degree(t, d, rng, parts);
        for (auto& pp : parts) acc[pp] += m;
        g = g / t;
        h = h % g;
      }
    }
    if (g.degree() > 0) acc[g.monic()] += m;
  }
  for (auto& [p, e] : acc) res.factors.push_back({p, e});
  return res;
}

std::vector<Elem> roots(const Poly& f) {
  std::vector<Elem> r;
  if (f.degree() <= 0) return r;
  // Restrict to the split part gcd(f, x^q - x) before factoring.
  Poly g = f.monic();
  Poly xq = frob_x(Poly::x(f.field()) % g, g);
  Poly s = gcd(g, xq - Poly::x(f.field()));
  if (s.degree() <= 0) return r;
  for (auto& [p, e] : factor(s).factors) {
    (void)e;
    if (p.degree() == 1) r.push_back(-p.coeff(0));
  }
  std::sort(r.begin(), r.end(), [](const Elem& a, const Elem& b) { return a.index() < b.index(); });
  return r;
}

FieldRef residue_field_of(const Poly& pi) {
  FieldRef f = pi.field();
  require(f->is_prime_field(), ErrorKind::Unsupported, "residue fields only over prime fields");
  require(pi.is_monic(), ErrorKind::ConditionViolated, "place polynomial must be monic");
  if (pi.degree() == 1) return f;
  std::vector<u32> m;
  for (auto& c : pi.coeffs()) m.push_back(c.coeff(0));
  return GF::extension(f->characteristic(), m);
}

Elem residue_of(const Poly& a, const Poly& pi) {
  FieldRef k = residue_field_of(pi);
  if (pi.degree() == 1) return a.eval(-pi.coeff(0));
  Poly r = a % pi;
  std::vector<u32> c;
  for (auto& e : r.coeffs()) c.push_back(e.coeff(0));
  return k->from_coeffs(c);
}

Poly lift_residue(const Elem& e, const Poly& pi) {
  FieldRef f = pi.field();
  if (pi.degree() == 1) return Poly::constant(f->from_int(e.coeff(0)));
  std::vector<Elem> c;
  for (int i = 0; i < pi.degree(); ++i) c.push_back(f->from_int(e.coeff(i)));
  return Poly(f, c);
}

namespace {
struct EmbeddingCache {
  std::mutex mu;
  std::map<std::pair<FieldRef, FieldRef>, std::unique_ptr<Embedding>> map;
};
EmbeddingCache& emb_cache() {
  static EmbeddingCache c;
  return c;
}
}  // namespace

const Embedding& embedding(FieldRef src, FieldRef dst) {
  auto& c = emb_cache();
  {
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.map.find({src, dst});
    if (it != c.map.end()) return *it->second;
  }
  if (src->characteristic() != dst->characteristic() || dst->degree() % src->degree() != 0)
    fail(ErrorKind::NotASubfield, src->to_string() + " does not embed in " + dst->to_string());
  Elem img;
  if (src->degree() == 1) {
    img = dst->zero();  // the generator of a prime field is 0 or irrelevant
    img = dst->from_int(src->gen().coeff(0));
  } else {
    std::vector<Elem> mc;
    for (u32 x : src->modulus()) mc.push_back(dst->from_int(x));
    auto rs = roots(Poly(dst, mc));
    require(!rs.empty(), ErrorKind::Internal, "no root of modulus in supposed extension");
    img = rs.front();
  }
  auto e = std::make_unique<Embedding>(src, dst, img);
  std::lock_guard<std::mutex> lk(c.mu);
  auto& slot = c.map[{src, dst}];
  if (!slot) slot = std::move(e);
  return *slot;
}

Elem norm(const Elem& a, FieldRef sub) {
  FieldRef F = a.field();
  if (sub == F) return a;
  const Embedding& e = embedding(sub, F);
  u64 Q = sub->order();
  u64 exp = (F->order() - 1) / (Q - 1);
  return e.preimage(pow(a, exp));
}

Elem trace(const Elem& a, FieldRef sub) {
  FieldRef F = a.field();
  if (sub == F) return a;
  const Embedding& e = embedding(sub, F);
  int r = F->degree() / sub->degree();
  Elem acc = F->zero(), cur = a;
  for (int i = 0; i < r; ++i) {
    acc = acc + cur;
    cur = frobenius(cur, sub->degree());
  }
  return e.preimage(acc);
}

}  // namespace symk
