#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symk/field.hpp"

namespace symk {

// Dense univariate polynomial over a finite field; coefficients low-to-high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldRef f) : f_(f) {}
  Poly(FieldRef f, std::vector<Elem> c);
  static Poly constant(const Elem& c);
  static Poly x(FieldRef f);                  // the variable
  static Poly linear(const Elem& root);       // X - root
  static Poly monomial(const Elem& c, int k);  // c X^k
  static Poly from_ints(FieldRef f, const std::vector<i64>& c);

  FieldRef field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  Elem coeff(int i) const;
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem lead() const;
  Poly monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Elem& c) const;
  Poly operator/(const Poly& o) const;  // exact quotient
  Poly operator%(const Poly& o) const;
  bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;  // degree, then coefficients from the top

  Elem eval(const Elem& a) const;                         // a in the coefficient field
  Elem eval_in(const Elem& a, const Embedding& e) const;  // a in an extension of the coefficient field
  Poly derivative() const;
  Poly map_coeffs(const Embedding& e) const;  // push coefficients through a field embedding
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  FieldRef f_ = nullptr;
  std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic (zero if both zero)
// g = s a + t b with g monic.
void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);
Poly powmod(const Poly& base, const Int& e, const Poly& m);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly invmod(const Poly& a, const Poly& m);  // throws DivisionByZero when not a unit
Poly pow(const Poly& a, unsigned e);
// Multiplicity of irreducible pi in a (a != 0).
int valuation(const Poly& a, const Poly& pi);
Poly strip(const Poly& a, const Poly& pi, int k);  // a / pi^k (exact)

bool is_irreducible(const Poly& f);

struct Factorization {
  Elem lead;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, sorted, distinct
  Poly expand() const;
};
Factorization factor(const Poly& f);
std::vector<Elem> roots(const Poly& f);  // distinct roots in the coefficient field, sorted

// Residue field of an irreducible polynomial over a prime field, as a field object.
FieldRef residue_field_of(const Poly& pi);
// Element of residue_field_of(pi) represented by polynomial a mod pi.
Elem residue_of(const Poly& a, const Poly& pi);
// Inverse: polynomial of degree < deg pi representing an element of residue_field_of(pi).
Poly lift_residue(const Elem& e, const Poly& pi);

}  // namespace symk
