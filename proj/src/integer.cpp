#include "symk/integer.hpp"

#include <algorithm>
#include <sstream>

#include "symk/errors.hpp"

namespace symk {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven certificate for all n < 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  for (u64 p = 2; p < 1000; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      factor_rec(n / p, out);
      return;
    }
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<u64> ps;
  factor_rec(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : ps) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  }
  return out;
}

u64 checked_pow(u64 p, u64 e) {
  unsigned __int128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= p;
    if (r >= (static_cast<unsigned __int128>(1) << 62)) return 0;
  }
  return static_cast<u64>(r);
}

std::string to_string(const Int& z) { return z.get_str(); }

Int pow_int(u64 b, u64 e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

IntVec IntMatrix::row(std::size_t i) const { return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  require(cols_ == o.rows_, ErrorKind::Internal, "matrix dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Int determinant(const IntMatrix& m0) {
  require(m0.rows() == m0.cols(), ErrorKind::Internal, "determinant of non-square matrix");
  std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariants) {
  // Recompute the divisibility chain from arbitrary cyclic orders.
  std::vector<Int> tors;
  int free = 0;
  for (auto& d : invariants) {
    Int a = abs(d);
    if (a == 0)
      ++free;
    else if (a != 1)
      tors.push_back(a);
  }
  // Repeatedly replace pairs (a,b) by (gcd, lcm) until chain.
  bool changed = true;
  std::sort(tors.begin(), tors.end());
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < tors.size(); ++i)
      for (std::size_t j = i + 1; j < tors.size(); ++j) {
        if (tors[j] % tors[i] != 0) {
          Int g = gcd(tors[i], tors[j]);
          Int l = tors[i] / g * tors[j];
          tors[i] = g;
          tors[j] = l;
          changed = true;
        }
      }
    std::sort(tors.begin(), tors.end());
  }
  for (auto& t : tors)
    if (t != 1) inv_.push_back(t);
  for (int i = 0; i < free; ++i) inv_.push_back(0);
}

int FiniteAbelianGroup::free_rank() const {
  int r = 0;
  for (auto& d : inv_)
    if (d == 0) ++r;
  return r;
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (auto& d : inv_) o *= d;
  return o;
}

std::string FiniteAbelianGroup::to_string() const {
  if (inv_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (i) os << " + ";
    if (inv_[i] == 0)
      os << "Z";
    else
      os << "Z/" << inv_[i].get_str();
  }
  return os.str();
}

namespace {

struct SnfWork {
  IntMatrix A, U, V, Uinv, Vinv;
  bool tr;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
    if (tr) {
      for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
      for (std::size_t r = 0; r < Uinv.rows(); ++r) std::swap(Uinv(r, i), Uinv(r, j));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
    if (tr) {
      for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
      for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv(i, c), Vinv(j, c));
    }
  }
  // row_i += q * row_t
  void add_row(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (A(t, c) != 0) A(i, c) += q * A(t, c);
    if (tr) {
      for (std::size_t c = 0; c < U.cols(); ++c)
        if (U(t, c) != 0) U(i, c) += q * U(t, c);
      for (std::size_t r = 0; r < Uinv.rows(); ++r)
        if (Uinv(r, i) != 0) Uinv(r, t) -= q * Uinv(r, i);
    }
  }
  // col_j += q * col_t
  void add_col(std::size_t j, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < A.rows(); ++r)
      if (A(r, t) != 0) A(r, j) += q * A(r, t);
    if (tr) {
      for (std::size_t r = 0; r < V.rows(); ++r)
        if (V(r, t) != 0) V(r, j) += q * V(r, t);
      for (std::size_t c = 0; c < Vinv.cols(); ++c)
        if (Vinv(j, c) != 0) Vinv(t, c) -= q * Vinv(j, c);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = -A(i, c);
    if (tr) {
      for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
      for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, i) = -Uinv(r, i);
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m, bool transforms) {
  SnfWork w;
  w.A = m;
  w.tr = transforms;
  std::size_t R = m.rows(), C = m.cols();
  if (transforms) {
    w.U = w.Uinv = IntMatrix::identity(R);
    w.V = w.Vinv = IntMatrix::identity(C);
  }
  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    for (;;) {
      // pivot: minimal nonzero absolute value in the trailing block
      std::size_t pi = R, pj = C;
      Int best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          const Int& x = w.A(i, j);
          if (x != 0 && (pi == R || abs(x) < best)) {
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (pi == R) goto done;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (w.A(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.A(i, t).get_mpz_t(), w.A(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (w.A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (w.A(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.A(t, j).get_mpz_t(), w.A(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (w.A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (w.A(i, j) % w.A(t, t) != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.A(t, t) < 0) w.negate_row(t);
  }
done:
  SmithResult res;
  std::vector<Int> inv;
  for (std::size_t i = 0; i < std::min(R, C); ++i)
    if (w.A(i, i) != 0) res.diagonal.push_back(w.A(i, i));
  inv = res.diagonal;
  for (std::size_t i = res.diagonal.size(); i < R; ++i) inv.push_back(0);
  res.group = FiniteAbelianGroup(inv);
  if (transforms) {
    res.U = std::move(w.U);
    res.V = std::move(w.V);
    res.Uinv = std::move(w.Uinv);
    res.Vinv = std::move(w.Vinv);
  }
  return res;
}

QuotientGroup::QuotientGroup(const std::vector<Int>& orders, const std::vector<IntVec>& extra) : n_(orders.size()) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < n_; ++i)
    if (orders[i] != 0) {
      IntVec r(n_);
      r[i] = orders[i];
      rows.push_back(r);
    }
  for (auto& e : extra) rows.push_back(e);
  IntMatrix R = IntMatrix::from_rows(rows, n_);
  SmithResult s = smith_normal_form(R, true);
  V_ = s.V;
  for (std::size_t j = 0; j < n_; ++j) {
    Int d = j < s.diagonal.size() ? s.diagonal[j] : Int(0);
    if (d == 1) continue;
    keep_.push_back(j);
    ord_.push_back(d);
    basis_.push_back(s.Vinv.row(j));
  }
}

IntVec QuotientGroup::coords(const IntVec& raw) const {
  IntVec out(keep_.size());
  for (std::size_t k = 0; k < keep_.size(); ++k) {
    Int acc = 0;
    std::size_t j = keep_[k];
    for (std::size_t i = 0; i < n_; ++i)
      if (raw[i] != 0) acc += raw[i] * V_(i, j);
    if (ord_[k] != 0) mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), ord_[k].get_mpz_t());
    out[k] = acc;
  }
  return out;
}

void Lattice::add(IntVec v) {
  require(v.size() == n_, ErrorKind::Internal, "lattice dimension mismatch");
  std::size_t idx = 0;
  for (;;) {
    std::size_t c = 0;
    while (c < n_ && v[c] == 0) ++c;
    if (c == n_) return;
    while (idx < rows_.size() && pivots_[idx] < c) ++idx;
    if (idx == rows_.size() || pivots_[idx] != c) {
      if (v[c] < 0)
        for (auto& x : v) x = -x;
      rows_.insert(rows_.begin() + idx, std::move(v));
      pivots_.insert(pivots_.begin() + idx, c);
      reduce_above(idx);
      return;
    }
    IntVec& r = rows_[idx];
    if (v[c] % r[c] == 0) {
      Int q = v[c] / r[c];
      for (std::size_t j = c; j < n_; ++j)
        if (r[j] != 0) v[j] -= q * r[j];
    } else {
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
      Int a = r[c] / g, b = v[c] / g;
      IntVec nr(n_), nv(n_);
      for (std::size_t j = c; j < n_; ++j) {
        nr[j] = s * r[j] + t * v[j];
        nv[j] = a * v[j] - b * r[j];
      }
      if (nr[c] < 0)
        for (auto& x : nr) x = -x;
      r = std::move(nr);
      v = std::move(nv);
      reduce_above(idx);
    }
    ++idx;
    // Keep the remainder small modulo later pivots.
    for (std::size_t k = idx; k < rows_.size(); ++k) {
      std::size_t p = pivots_[k];
      if (v[p] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), rows_[k][p].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = p; j < n_; ++j)
        if (rows_[k][j] != 0) v[j] -= q * rows_[k][j];
    }
  }
}

void Lattice::reduce_above(std::size_t idx) {
  // Reduce row idx against later rows, then earlier rows against row idx.
  IntVec& r = rows_[idx];
  for (std::size_t k = idx + 1; k < rows_.size(); ++k) {
    std::size_t p = pivots_[k];
    if (r[p] == 0) continue;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r[p].get_mpz_t(), rows_[k][p].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = p; j < n_; ++j)
      if (rows_[k][j] != 0) r[j] -= q * rows_[k][j];
  }
  std::size_t p = pivots_[idx];
  for (std::size_t k = 0; k < idx; ++k) {
    IntVec& u = rows_[k];
    if (u[p] == 0) continue;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), u[p].get_mpz_t(), r[p].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = p; j < n_; ++j)
      if (r[j] != 0) u[j] -= q * r[j];
  }
}

IntVec Lattice::reduce(IntVec v) const {
  require(v.size() == n_, ErrorKind::Internal, "lattice dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (v[c] == 0) continue;
    while (idx < rows_.size() && pivots_[idx] < c) ++idx;
    if (idx == rows_.size() || pivots_[idx] != c) continue;
    const IntVec& r = rows_[idx];
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), r[c].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = c; j < n_; ++j)
      if (r[j] != 0) v[j] -= q * r[j];
  }
  return v;
}

bool Lattice::contains(IntVec v) const {
  // Echelon membership: every leading entry must be absorbed by a pivot row.
  std::size_t idx = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (v[c] == 0) continue;
    while (idx < rows_.size() && pivots_[idx] < c) ++idx;
    if (idx == rows_.size() || pivots_[idx] != c) return false;
    const IntVec& r = rows_[idx];
    if (v[c] % r[c] != 0) return false;
    Int q = v[c] / r[c];
    for (std::size_t j = c; j < n_; ++j)
      if (r[j] != 0) v[j] -= q * r[j];
  }
  return true;
}

FiniteAbelianGroup Lattice::quotient() const {
  IntMatrix m = IntMatrix::from_rows(rows_, n_);
  SmithResult s = smith_normal_form(m, false);
  std::vector<Int> inv = s.diagonal;
  for (std::size_t i = s.diagonal.size(); i < n_; ++i) inv.push_back(0);
  return FiniteAbelianGroup(inv);
}

std::vector<IntVec> Lattice::basis() const { return rows_; }

}  // namespace symk
