#pragma once

#include <vector>

#include "symk/field.hpp"

namespace symk {

// The fields T_d = F_{q^d}, d | N, realised inside one top field T_N over the base F_q.
// T_d is generated by gamma_d = gamma^((q^N-1)/(q^d-1)) for a fixed primitive gamma of T_N, so
// discrete logs, norms and inclusions between levels become integer arithmetic.
class FieldTower {
 public:
  FieldTower(FieldRef base, int N);

  FieldRef base() const { return base_; }
  FieldRef top() const { return top_; }
  int N() const { return N_; }
  u64 q() const { return q_; }
  bool has_level(int d) const { return d >= 1 && N_ % d == 0; }
  u64 order(int d) const;   // q^d
  u64 units(int d) const { return order(d) - 1; }
  u64 lift(int d) const;    // (q^N - 1) / (q^d - 1)
  u64 qpow(u64 k) const;    // q^k mod (q^N - 1)

  Elem embed(const Elem& x) const;  // any field whose order divides q^N
  Elem pull(const Elem& y, FieldRef F) const;  // inverse of embed on the image of F
  u64 dlog_top(const Elem& y) const;
  u64 dlog(const Elem& y, int d) const;  // y in T_d (top coordinates), log base gamma_d
  Elem gamma(int d) const;
  Elem frob(const Elem& y, i64 k) const;  // y^(q^k), k may be negative
  int level(const Elem& y) const;         // least d with y in T_d

 private:
  FieldRef base_, top_;
  int N_;
  u64 q_;
  Elem g_;
};

// Least N containing every level d <= D and every compositum of such a level with the given degrees.
int tower_degree(int D, const std::vector<int>& extra_degrees);

}  // namespace symk
