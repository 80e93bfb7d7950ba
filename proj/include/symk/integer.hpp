#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace symk {

using Int = mpz_class;
using IntVec = std::vector<Int>;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;

// 64-bit helpers.
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
bool is_prime_u64(u64 n);
// Sorted prime factorization of n >= 1 as (prime, exponent).
std::vector<std::pair<u64, int>> factor_u64(u64 n);
// p^e, or 0 when it does not fit in 62 bits.
u64 checked_pow(u64 p, u64 e);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

std::string to_string(const Int& z);
Int pow_int(u64 b, u64 e);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  IntVec row(std::size_t i) const;

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;
  bool is_diagonal() const;
  IntMatrix transpose() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

Int determinant(const IntMatrix& m);  // Bareiss, square only

// Invariant factors d1 | d2 | ... with each d >= 2 or d == 0 (a free Z summand).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Int> invariants);  // normalizes (drops 1s, sorts into chain)

  const std::vector<Int>& invariants() const { return inv_; }
  bool is_trivial() const { return inv_.empty(); }
  int free_rank() const;
  // Order of the torsion part times (0 if free rank > 0).
  Int order() const;
  std::string to_string() const;  // "0", "Z/4", "Z/2 + Z/6 + Z"
  bool operator==(const FiniteAbelianGroup& o) const { return inv_ == o.inv_; }

 private:
  std::vector<Int> inv_;
};

struct SmithResult {
  FiniteAbelianGroup group;       // cokernel of M : Z^cols -> Z^rows
  std::vector<Int> diagonal;      // nonzero diagonal entries in order, including 1s
  IntMatrix U, V;                 // U*M*V = D (only when transforms requested)
  IntMatrix Uinv, Vinv;
};

SmithResult smith_normal_form(const IntMatrix& m, bool transforms = false);

// Quotient Z^n / L with L given by generating rows. Provides canonical coordinates.
class QuotientGroup {
 public:
  QuotientGroup() = default;
  // `orders[i]` (0 means free) are cyclic relations on coordinate i; `extra` are further relation rows.
  QuotientGroup(const std::vector<Int>& orders, const std::vector<IntVec>& extra);
  std::size_t raw_rank() const { return n_; }
  const std::vector<Int>& orders() const { return ord_; }  // orders of basis elements (0 = free), no 1s
  FiniteAbelianGroup group() const { return FiniteAbelianGroup(ord_); }
  IntVec coords(const IntVec& raw) const;       // reduced coordinates in the basis
  const IntVec& basis_raw(std::size_t i) const { return basis_[i]; }  // raw representative of basis element i
  // Matrix (basis_count x target raw_rank) of a linear map given raw images of raw generators.
 private:
  std::size_t n_ = 0;
  std::vector<Int> ord_;
  std::vector<std::size_t> keep_;  // SNF columns kept
  IntMatrix V_;
  std::vector<IntVec> basis_;
};

// Incremental Hermite normal form of a sublattice of Z^n.
class Lattice {
 public:
  explicit Lattice(std::size_t n = 0) : n_(n) {}
  std::size_t dim() const { return n_; }
  void add(IntVec v);
  bool contains(IntVec v) const;
  IntVec reduce(IntVec v) const;  // canonical representative modulo the lattice
  std::size_t rank() const { return rows_.size(); }
  FiniteAbelianGroup quotient() const;
  std::vector<IntVec> basis() const;

 private:
  std::size_t n_;
  std::vector<IntVec> rows_;         // echelon rows, sorted by pivot
  std::vector<std::size_t> pivots_;  // pivot column per row
  void reduce_above(std::size_t idx);
};

}  // namespace symk
