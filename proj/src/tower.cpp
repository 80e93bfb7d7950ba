#include "symk/tower.hpp"

namespace symk {

FieldTower::FieldTower(FieldRef base, int N) : base_(base), N_(N) {
  require(N >= 1, ErrorKind::UsageError, "tower degree must be positive");
  q_ = base->order();
  require(checked_pow(q_, static_cast<u64>(N)) != 0 && checked_pow(q_, static_cast<u64>(N)) <= (u64(1) << 40),
          ErrorKind::TooLarge, "tower field too large");
  top_ = GF::standard(base->characteristic(), base->degree() * N);
  g_ = top_->primitive();
}

u64 FieldTower::order(int d) const { return checked_pow(q_, static_cast<u64>(d)); }

u64 FieldTower::lift(int d) const {
  require(has_level(d), ErrorKind::DegreeOverflow, "level " + std::to_string(d) + " not in tower");
  return units(N_) / units(d);
}

u64 FieldTower::qpow(u64 k) const { return powmod(q_ % units(N_), k % static_cast<u64>(N_), units(N_)); }

Elem FieldTower::embed(const Elem& x) const {
  FieldRef F = x.field();
  if (F == top_) return x;
  require(F->characteristic() == top_->characteristic() && top_->degree() % F->degree() == 0,
          ErrorKind::DegreeOverflow, "field " + F->to_string() + " does not embed in the tower");
  return embedding(F, top_).apply(x);
}

Elem FieldTower::pull(const Elem& y, FieldRef F) const {
  if (F == top_) return y;
  return embedding(F, top_).preimage(y);
}

u64 FieldTower::dlog_top(const Elem& y) const { return discrete_log(y, g_); }

u64 FieldTower::dlog(const Elem& y, int d) const {
  u64 l = dlog_top(y), s = lift(d);
  require(l % s == 0, ErrorKind::Internal, "element is not in the requested level");
  return l / s;
}

Elem FieldTower::gamma(int d) const { return pow(g_, lift(d)); }

Elem FieldTower::frob(const Elem& y, i64 k) const {
  i64 r = k % N_;
  if (r < 0) r += N_;
  return frobenius(y, static_cast<int>(r) * base_->degree());
}

int FieldTower::level(const Elem& y) const {
  for (int d = 1; d <= N_; ++d)
    if (N_ % d == 0 && frob(y, d) == y) return d;
  return N_;
}

int tower_degree(int D, const std::vector<int>& extra_degrees) {
  u64 N = 1;
  for (int d = 1; d <= D; ++d) {
    N = lcm_u64(N, static_cast<u64>(d));
    for (int e : extra_degrees) N = lcm_u64(N, lcm_u64(static_cast<u64>(d), static_cast<u64>(e)));
  }
  require(N <= 1000, ErrorKind::TooLarge, "tower degree too large");
  return static_cast<int>(N);
}

}  // namespace symk
