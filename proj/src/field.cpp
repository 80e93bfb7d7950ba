#include "symk/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace symk {

namespace {

// Dense polynomials over F_p used only for modulus checks.
using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p) {
  fp_trim(a);
  std::size_t dm = m.size() - 1;
  u64 inv_lead = powmod(m.back(), p - 2, p);
  while (a.size() > dm && !a.empty()) {
    u64 c = mulmod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - mulmod(c, m[j], p)) % p;
    fp_trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return fp_mod(r, m, p);
}

FpPoly fp_powmod(FpPoly base, u64 e, const FpPoly& m, u64 p) {
  FpPoly r{1};
  base = fp_mod(base, m, p);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m by repeated p-th powering.
FpPoly fp_frob_x(const FpPoly& m, u64 p, int k) {
  FpPoly r = fp_mod(FpPoly{0, 1}, m, p);
  for (int i = 0; i < k; ++i) r = fp_powmod(r, p, m, p);
  return r;
}

bool fp_irreducible(const FpPoly& m, u64 p) {
  int n = static_cast<int>(m.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  if (m[0] == 0) return false;
  FpPoly x = fp_mod(FpPoly{0, 1}, m, p);
  FpPoly xn = fp_frob_x(m, p, n);
  FpPoly d = xn;
  d.resize(std::max<std::size_t>(d.size(), 2), 0);
  d[1] = (d[1] + p - 1) % p;
  fp_trim(d);
  if (!d.empty()) return false;
  for (auto [r, e] : factor_u64(static_cast<u64>(n))) {
    (void)e;
    FpPoly h = fp_frob_x(m, p, n / static_cast<int>(r));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    fp_trim(h);
    FpPoly g = fp_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<u64, std::vector<u32>>, std::unique_ptr<GF>> fields;
  std::map<std::pair<u64, int>, FieldRef> standard;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool Elem::is_zero() const {
  for (int i = 0; i < f_->degree(); ++i)
    if (c_[i]) return false;
  return true;
}

bool Elem::is_one() const {
  if (c_[0] != 1) return false;
  for (int i = 1; i < f_->degree(); ++i)
    if (c_[i]) return false;
  return true;
}

u64 Elem::index() const {
  u64 r = 0;
  u64 p = f_->characteristic();
  for (int i = f_->degree() - 1; i >= 0; --i) r = r * p + c_[i];
  return r;
}

bool Elem::operator<(const Elem& o) const {
  if (f_ != o.f_) return f_ < o.f_;
  for (int i = f_->degree() - 1; i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

GF::GF(u64 p, std::vector<u32> modulus) : p_(p), n_(static_cast<int>(modulus.size()) - 1), mod_(std::move(modulus)) {
  q_ = checked_pow(p_, static_cast<u64>(n_));
}

FieldRef GF::prime(u64 p) { return extension(p, {0, 1}); }

FieldRef GF::extension(u64 p, const std::vector<u32>& modulus) {
  require(p >= 2 && p < (1ull << 31), ErrorKind::TooLarge, "characteristic outside supported range");
  require(modulus.size() >= 2 && modulus.back() == 1, ErrorKind::ConditionViolated, "modulus must be monic of degree >= 1");
  if (modulus.size() == 2 && modulus[0] != 0) return prime(p);
  int n = static_cast<int>(modulus.size()) - 1;
  require(n <= kMaxExtDegree, ErrorKind::TooLarge, "extension degree exceeds " + std::to_string(kMaxExtDegree));
  require(checked_pow(p, static_cast<u64>(n)) != 0, ErrorKind::TooLarge, "field order exceeds 62 bits");
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.fields.find({p, modulus});
    if (it != reg.fields.end()) return it->second.get();
  }
  require(is_prime_u64(p), ErrorKind::ConditionViolated, std::to_string(p) + " is not prime");
  for (u32 c : modulus) require(c < p, ErrorKind::ConditionViolated, "modulus coefficient not reduced");
  FpPoly m(modulus.begin(), modulus.end());
  require(fp_irreducible(m, p), ErrorKind::ConditionViolated, "modulus is not irreducible");
  std::lock_guard<std::mutex> lk(reg.mu);
  auto& slot = reg.fields[{p, modulus}];
  if (!slot) slot.reset(new GF(p, modulus));
  return slot.get();
}

FieldRef GF::standard(u64 p, int n) {
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.standard.find({p, n});
    if (it != reg.standard.end()) return it->second;
  }
  require(n >= 1 && n <= kMaxExtDegree, ErrorKind::TooLarge, "extension degree exceeds " + std::to_string(kMaxExtDegree));
  require(checked_pow(p, static_cast<u64>(n)) != 0, ErrorKind::TooLarge, "field order exceeds 62 bits");
  FieldRef f = nullptr;
  if (n == 1) {
    f = prime(p);
  } else {
    // Enumerate the lower coefficients in increasing index order.
    for (u64 idx = 0;; ++idx) {
      FpPoly m(n + 1, 0);
      u64 t = idx;
      for (int i = 0; i < n; ++i) {
        m[i] = t % p;
        t /= p;
      }
      m[n] = 1;
      if (m[0] == 0) continue;
      if (fp_irreducible(m, p)) {
        f = extension(p, std::vector<u32>(m.begin(), m.end()));
        break;
      }
    }
  }
  std::lock_guard<std::mutex> lk(reg.mu);
  reg.standard[{p, n}] = f;
  return f;
}

Elem GF::one() const {
  Elem e(this);
  e.coeff(0) = 1;
  return e;
}

Elem GF::gen() const {
  Elem e(this);
  if (n_ == 1)
    e.coeff(0) = static_cast<u32>((p_ - mod_[0]) % p_);
  else
    e.coeff(1) = 1;
  return e;
}

Elem GF::from_int(i64 v) const {
  Elem e(this);
  i64 r = v % static_cast<i64>(p_);
  if (r < 0) r += static_cast<i64>(p_);
  e.coeff(0) = static_cast<u32>(r);
  return e;
}

Elem GF::from_coeffs(const std::vector<u32>& c) const {
  Elem e(this);
  // Reduce modulo the modulus when more coefficients are given.
  std::vector<u64> t(c.begin(), c.end());
  for (auto& x : t) x %= p_;
  for (int k = static_cast<int>(t.size()) - 1; k >= n_; --k) {
    u64 lead = t[k];
    if (!lead) continue;
    t[k] = 0;
    for (int j = 0; j < n_; ++j) t[k - n_ + j] = (t[k - n_ + j] + mulmod(p_ - mod_[j], lead, p_)) % p_;
  }
  for (int i = 0; i < n_ && i < static_cast<int>(t.size()); ++i) e.coeff(i) = static_cast<u32>(t[i]);
  return e;
}

Elem GF::from_index(u64 idx) const {
  Elem e(this);
  for (int i = 0; i < n_; ++i) {
    e.coeff(i) = static_cast<u32>(idx % p_);
    idx /= p_;
  }
  return e;
}

const std::vector<u64>& GF::unit_primes() const {
  primitive();
  return unit_primes_;
}

const Elem& GF::primitive() const {
  std::call_once(prim_once_, [this] {
    for (auto [r, e] : factor_u64(q_ - 1)) {
      (void)e;
      unit_primes_.push_back(r);
    }
    for (u64 i = 1; i < q_; ++i) {
      Elem g = from_index(i);
      bool ok = true;
      for (u64 r : unit_primes_)
        if (pow(g, (q_ - 1) / r).is_one()) {
          ok = false;
          break;
        }
      if (ok) {
        prim_ = g;
        return;
      }
    }
    prim_ = one();  // q = 2
  });
  return prim_;
}

std::string GF::to_string() const {
  if (n_ == 1 && mod_[0] == 0) return "GF(" + std::to_string(p_) + ")";
  std::vector<u32> m = mod_;
  Elem dummy;  // print modulus as polynomial in x
  std::ostringstream os;
  os << "GF(" << q_ << ",";
  bool first = true;
  for (int i = n_; i >= 0; --i) {
    if (!m[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || m[i] != 1) os << m[i];
    if (i > 0 && m[i] != 1) os << "*";
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
  }
  os << ")";
  return os.str();
}

Elem GF::add(const Elem& a, const Elem& b) const {
  Elem r(this);
  for (int i = 0; i < n_; ++i) {
    u64 s = static_cast<u64>(a.coeff(i)) + b.coeff(i);
    r.coeff(i) = static_cast<u32>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elem GF::sub(const Elem& a, const Elem& b) const {
  Elem r(this);
  for (int i = 0; i < n_; ++i) {
    u64 s = static_cast<u64>(a.coeff(i)) + p_ - b.coeff(i);
    r.coeff(i) = static_cast<u32>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elem GF::neg(const Elem& a) const {
  Elem r(this);
  for (int i = 0; i < n_; ++i) r.coeff(i) = a.coeff(i) ? static_cast<u32>(p_ - a.coeff(i)) : 0;
  return r;
}

Elem GF::scale(const Elem& a, u64 k) const {
  Elem r(this);
  k %= p_;
  for (int i = 0; i < n_; ++i) r.coeff(i) = static_cast<u32>(static_cast<u64>(a.coeff(i)) * k % p_);
  return r;
}

Elem GF::mul(const Elem& a, const Elem& b) const {
  Elem r(this);
  if (n_ == 1) {
    r.coeff(0) = static_cast<u32>(static_cast<u64>(a.coeff(0)) * b.coeff(0) % p_);
    return r;
  }
  u64 t[2 * kMaxExtDegree] = {};
  for (int i = 0; i < n_; ++i) {
    u64 ai = a.coeff(i);
    if (!ai) continue;
    for (int j = 0; j < n_; ++j) t[i + j] = (t[i + j] + ai * b.coeff(j)) % p_;
  }
  for (int k = 2 * n_ - 2; k >= n_; --k) {
    u64 c = t[k];
    if (!c) continue;
    for (int j = 0; j < n_; ++j) {
      if (!mod_[j]) continue;
      t[k - n_ + j] = (t[k - n_ + j] + (p_ - mod_[j]) * c) % p_;
    }
  }
  for (int i = 0; i < n_; ++i) r.coeff(i) = static_cast<u32>(t[i]);
  return r;
}

Elem GF::inv(const Elem& a) const {
  if (a.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in " + to_string());
  if (n_ == 1) {
    i64 t = 0, nt = 1, r = static_cast<i64>(p_), nr = a.coeff(0);
    while (nr) {
      i64 q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0) t += static_cast<i64>(p_);
    Elem e(this);
    e.coeff(0) = static_cast<u32>(t);
    return e;
  }
  return pow(a, q_ - 2);
}

static void same_field(const Elem& a, const Elem& b) {
  if (a.field() != b.field())
    fail(ErrorKind::FieldMismatch, (a.field() ? a.field()->to_string() : "?") + " vs " +
                                       (b.field() ? b.field()->to_string() : "?"));
}

Elem operator+(const Elem& a, const Elem& b) {
  same_field(a, b);
  return a.field()->add(a, b);
}
Elem operator-(const Elem& a, const Elem& b) {
  same_field(a, b);
  return a.field()->sub(a, b);
}
Elem operator-(const Elem& a) { return a.field()->neg(a); }
Elem operator*(const Elem& a, const Elem& b) {
  same_field(a, b);
  return a.field()->mul(a, b);
}
Elem operator/(const Elem& a, const Elem& b) {
  same_field(a, b);
  return a.field()->mul(a, a.field()->inv(b));
}
Elem inverse(const Elem& a) { return a.field()->inv(a); }

Elem pow(const Elem& a, u64 e) {
  FieldRef f = a.field();
  Elem r = f->one(), b = a;
  while (e) {
    if (e & 1) r = f->mul(r, b);
    e >>= 1;
    if (e) b = f->mul(b, b);
  }
  return r;
}

Elem pow(const Elem& a, const Int& e) {
  if (e < 0) return pow(inverse(a), Int(-e));
  FieldRef f = a.field();
  // reduce exponent modulo q-1 for units
  Int ee = e;
  if (!a.is_zero()) {
    Int m = Int(std::to_string(f->order() - 1));
    ee = e % m;
  }
  return pow(a, static_cast<u64>(mpz_get_ui(ee.get_mpz_t())));
}

Elem pow_signed(const Elem& a, i64 e) {
  if (e < 0) return pow(inverse(a), static_cast<u64>(-e));
  return pow(a, static_cast<u64>(e));
}

Elem frobenius(const Elem& a, int k) {
  Elem r = a;
  u64 p = a.field()->characteristic();
  int n = a.field()->degree();
  if (n == 1) return a;
  k %= n;
  if (k < 0) k += n;
  for (int i = 0; i < k; ++i) r = pow(r, p);
  return r;
}

std::string to_string(const Elem& a, const std::string& var) {
  FieldRef f = a.field();
  if (!f) return "?";
  int n = f->degree();
  std::ostringstream os;
  bool first = true;
  for (int i = n - 1; i >= 0; --i) {
    u32 c = a.coeff(i);
    if (!c) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0 && c != 1) os << "*";
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

u64 multiplicative_order(const Elem& a) {
  if (a.is_zero()) fail(ErrorKind::ZeroElement, "order of zero");
  FieldRef f = a.field();
  u64 n = f->order() - 1;
  u64 ord = n;
  for (auto [r, e] : factor_u64(n)) {
    for (int i = 0; i < e; ++i) {
      if (pow(a, ord / r).is_one())
        ord /= r;
      else
        break;
    }
  }
  return ord;
}

bool is_generator(const Elem& g) {
  if (g.is_zero()) return false;
  FieldRef f = g.field();
  u64 n = f->order() - 1;
  for (u64 r : f->unit_primes())
    if (pow(g, n / r).is_one()) return false;
  return true;
}

u64 bsgs(const Elem& a, const Elem& g, u64 n) {
  if (n == 1) return 0;
  u64 m = 1;
  while (m * m < n) ++m;
  std::unordered_map<u64, u64> table;
  table.reserve(m * 2);
  Elem cur = a.field()->one();
  for (u64 j = 0; j < m; ++j) {
    table.emplace(cur.index(), j);
    cur = cur * g;
  }
  Elem step = inverse(pow(g, m));
  Elem gamma = a;
  for (u64 i = 0; i <= m; ++i) {
    auto it = table.find(gamma.index());
    if (it != table.end()) return (i * m + it->second) % n;
    gamma = gamma * step;
  }
  fail(ErrorKind::Internal, "baby-step giant-step found no logarithm");
}

u64 discrete_log(const Elem& a, const Elem& g) {
  same_field(a, g);
  if (a.is_zero()) fail(ErrorKind::ZeroElement, "discrete log of zero");
  if (!is_generator(g)) fail(ErrorKind::NotGenerator, to_string(g) + " does not generate the unit group");
  FieldRef f = a.field();
  u64 n = f->order() - 1;
  if (n == 1) return 0;
  // Pohlig-Hellman over prime powers, combined by CRT.
  u64 x = 0, mod = 1;
  for (auto [r, e] : factor_u64(n)) {
    u64 re = 1;
    for (int i = 0; i < e; ++i) re *= r;
    Elem gi = pow(g, n / re), hi = pow(a, n / re);
    Elem gamma = pow(gi, re / r);
    u64 xi = 0, rk = 1;
    for (int k = 0; k < e; ++k) {
      Elem hk = pow(pow(inverse(gi), xi) * hi, re / r / rk);
      u64 dk = bsgs(hk, gamma, r);
      xi += dk * rk;
      rk *= r;
    }
    // combine x mod `mod` with xi mod re
    u64 t = (xi + re - x % re) % re;
    u64 inv = 1;
    if (mod % re != 0) {
      // inverse of mod modulo re
      Int im;
      Int mm(std::to_string(mod)), rr(std::to_string(re));
      mpz_invert(im.get_mpz_t(), mm.get_mpz_t(), rr.get_mpz_t());
      inv = mpz_get_ui(im.get_mpz_t());
    }
    u64 k = mulmod(t, inv, re);
    x = x + mod * k;
    mod *= re;
  }
  return x % n;
}

bool is_square(const Elem& a) {
  if (a.is_zero()) return true;
  FieldRef f = a.field();
  if (f->characteristic() == 2) return true;
  return pow(a, (f->order() - 1) / 2).is_one();
}

Elem sqrt(const Elem& a) {
  FieldRef f = a.field();
  if (a.is_zero()) return a;
  u64 q = f->order();
  if (f->characteristic() == 2) return pow(a, q / 2);
  if (!is_square(a)) fail(ErrorKind::ConditionViolated, "not a square: " + to_string(a));
  u64 t = q - 1;
  int s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  Elem z;
  for (u64 i = 2;; ++i) {
    z = f->from_index(i);
    if (!is_square(z)) break;
  }
  Elem c = pow(z, t), r = pow(a, (t + 1) / 2), tt = pow(a, t);
  int m = s;
  while (!tt.is_one()) {
    int i = 0;
    Elem t2 = tt;
    while (!t2.is_one()) {
      t2 = t2 * t2;
      ++i;
    }
    Elem b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b;
    r = r * b;
    c = b * b;
    tt = tt * c;
    m = i;
  }
  return r;
}

int element_degree(const Elem& a) {
  int n = a.field()->degree();
  for (int k = 1; k <= n; ++k) {
    if (n % k) continue;
    if (frobenius(a, k) == a) return k;
  }
  return n;
}

std::vector<u32> minimal_polynomial_fp(const Elem& a) {
  FieldRef f = a.field();
  int k = element_degree(a);
  std::vector<Elem> poly{f->one()};  // low-to-high
  Elem conj = a;
  for (int i = 0; i < k; ++i) {
    std::vector<Elem> next(poly.size() + 1, f->zero());
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = next[j + 1] + poly[j];
      next[j] = next[j] - poly[j] * conj;
    }
    poly = std::move(next);
    conj = frobenius(conj, 1);
  }
  std::vector<u32> out;
  for (auto& c : poly) out.push_back(c.coeff(0));
  return out;
}

Embedding::Embedding(FieldRef src, FieldRef dst, const Elem& image_of_gen) : src_(src), dst_(dst), img_(image_of_gen) {
  int ns = src->degree(), nd = dst->degree();
  u64 p = dst->characteristic();
  require(src->characteristic() == p && nd % ns == 0, ErrorKind::NotASubfield,
          src->to_string() + " does not embed in " + dst->to_string());
  powers_.push_back(dst->one());
  for (int k = 1; k < ns; ++k) powers_.push_back(powers_.back() * img_);
  // Gauss-Jordan on [M | I] with M the nd x ns matrix of images.
  std::vector<std::vector<u64>> rows(nd, std::vector<u64>(ns + nd, 0));
  for (int i = 0; i < nd; ++i) {
    for (int k = 0; k < ns; ++k) rows[i][k] = powers_[k].coeff(i);
    rows[i][ns + i] = 1;
  }
  int r = 0;
  for (int c = 0; c < ns; ++c) {
    int piv = -1;
    for (int i = r; i < nd; ++i)
      if (rows[i][c]) {
        piv = i;
        break;
      }
    require(piv >= 0, ErrorKind::Internal, "embedding matrix is singular");
    std::swap(rows[r], rows[piv]);
    u64 inv = powmod(rows[r][c], p - 2, p);
    for (auto& x : rows[r]) x = mulmod(x, inv, p);
    for (int i = 0; i < nd; ++i) {
      if (i == r || !rows[i][c]) continue;
      u64 f = rows[i][c];
      for (int j = 0; j < ns + nd; ++j) rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j], p)) % p;
    }
    ++r;
  }
  for (auto& row : rows) solve_.push_back(std::vector<u32>(row.begin() + ns, row.end()));
}

Elem Embedding::apply(const Elem& a) const {
  if (a.field() != src_) fail(ErrorKind::FieldMismatch, "embedding source mismatch");
  if (src_ == dst_) return a;
  Elem r = dst_->zero();
  for (int k = 0; k < src_->degree(); ++k)
    if (a.coeff(k)) r = r + dst_->scale(powers_[k], a.coeff(k));
  return r;
}

bool Embedding::in_image(const Elem& b) const {
  if (src_ == dst_) return true;
  int ns = src_->degree(), nd = dst_->degree();
  u64 p = dst_->characteristic();
  for (int i = ns; i < nd; ++i) {
    u64 acc = 0;
    for (int j = 0; j < nd; ++j) acc = (acc + static_cast<u64>(solve_[i][j]) * b.coeff(j)) % p;
    if (acc) return false;
  }
  return true;
}

Elem Embedding::preimage(const Elem& b) const {
  if (b.field() != dst_) fail(ErrorKind::FieldMismatch, "embedding target mismatch");
  if (src_ == dst_) return b;
  if (!in_image(b)) fail(ErrorKind::NotASubfield, to_string(b) + " not in image of " + src_->to_string());
  int ns = src_->degree(), nd = dst_->degree();
  u64 p = dst_->characteristic();
  Elem r = src_->zero();
  for (int i = 0; i < ns; ++i) {
    u64 acc = 0;
    for (int j = 0; j < nd; ++j) acc = (acc + static_cast<u64>(solve_[i][j]) * b.coeff(j)) % p;
    r.coeff(i) = static_cast<u32>(acc);
  }
  return r;
}

}  // namespace symk
