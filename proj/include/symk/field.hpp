#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "symk/errors.hpp"
#include "symk/integer.hpp"

namespace symk {

inline constexpr int kMaxExtDegree = 24;

class GF;
using FieldRef = const GF*;

// Element of a finite field F_p[x]/(m): coefficient vector, entries in [0,p).
class Elem {
 public:
  Elem() = default;
  Elem(FieldRef f) : f_(f) {}

  FieldRef field() const { return f_; }
  u32 coeff(int i) const { return c_[i]; }
  u32& coeff(int i) { return c_[i]; }
  bool is_zero() const;
  bool is_one() const;
  // Encoding sum c_i p^i; a total order used for canonical choices.
  u64 index() const;

  bool operator==(const Elem& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
  bool operator<(const Elem& o) const;

 private:
  FieldRef f_ = nullptr;
  std::array<u32, kMaxExtDegree> c_{};
};

class GF {
 public:
  // Interned constructors: equal fields are the same object.
  static FieldRef prime(u64 p);
  static FieldRef extension(u64 p, const std::vector<u32>& modulus);  // monic, low-to-high; verified irreducible
  static FieldRef standard(u64 p, int n);                              // least monic irreducible of degree n

  u64 characteristic() const { return p_; }
  int degree() const { return n_; }
  u64 order() const { return q_; }
  const std::vector<u32>& modulus() const { return mod_; }
  bool is_prime_field() const { return n_ == 1; }

  Elem zero() const { return Elem(this); }
  Elem one() const;
  Elem gen() const;  // class of x
  Elem from_int(i64 v) const;
  Elem from_coeffs(const std::vector<u32>& c) const;
  Elem from_index(u64 idx) const;

  // Least primitive element (by index).
  const Elem& primitive() const;
  // Prime factors of q-1.
  const std::vector<u64>& unit_primes() const;

  std::string to_string() const;  // "GF(5)" or "GF(9,x^2+1)"

  // arithmetic kernels
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem scale(const Elem& a, u64 k) const;

 private:
  GF(u64 p, std::vector<u32> modulus);
  u64 p_;
  int n_;
  u64 q_;
  std::vector<u32> mod_;
  mutable std::once_flag prim_once_;
  mutable Elem prim_;
  mutable std::vector<u64> unit_primes_;
};

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(const Elem& a, const Elem& b);
Elem operator/(const Elem& a, const Elem& b);
Elem inverse(const Elem& a);
Elem pow(const Elem& a, u64 e);
Elem pow(const Elem& a, const Int& e);   // negative exponents allowed for units
Elem pow_signed(const Elem& a, i64 e);
Elem frobenius(const Elem& a, int k = 1);  // a^(p^k)
std::string to_string(const Elem& a, const std::string& var = "x");

// Multiplicative order of a unit.
u64 multiplicative_order(const Elem& a);
bool is_generator(const Elem& g);
// Pohlig-Hellman with baby-step giant-step on each prime-power part.
u64 discrete_log(const Elem& a, const Elem& g);
// Baby-step giant-step in the cyclic group generated by g of order n.
u64 bsgs(const Elem& a, const Elem& g, u64 n);

bool is_square(const Elem& a);
Elem sqrt(const Elem& a);  // some square root; throws ConditionViolated on non-squares

// Minimal polynomial of a over F_p (monic, low-to-high coefficients).
std::vector<u32> minimal_polynomial_fp(const Elem& a);
// Least n with a in F_{p^n}.
int element_degree(const Elem& a);

// A field embedding src -> dst determined by the image of the generator.
class Embedding {
 public:
  Embedding() = default;
  Embedding(FieldRef src, FieldRef dst, const Elem& image_of_gen);
  FieldRef src() const { return src_; }
  FieldRef dst() const { return dst_; }
  const Elem& image_of_gen() const { return img_; }
  Elem apply(const Elem& a) const;
  bool in_image(const Elem& b) const;
  Elem preimage(const Elem& b) const;  // throws NotASubfield if b is not in the image

 private:
  FieldRef src_ = nullptr, dst_ = nullptr;
  Elem img_;
  std::vector<Elem> powers_;  // images of x^k
  // Row-reduced system for preimages: rows of (dst coords | src coords).
  std::vector<std::vector<u32>> solve_;
  std::vector<int> pivot_col_;
};

// Canonical embedding: least root (by index) of src's modulus in dst. Cached.
const Embedding& embedding(FieldRef src, FieldRef dst);
// Relative norm and trace from a.field() down to `sub` (pulled back through the canonical embedding).
Elem norm(const Elem& a, FieldRef sub);
Elem trace(const Elem& a, FieldRef sub);

}  // namespace symk
