#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "symk/poly.hpp"

namespace symk {

struct Curve {
  enum class Kind { P1, Elliptic };
  Kind kind = Kind::P1;
  FieldRef base = nullptr;  // prime field
  Elem a, b;                // y^2 = x^3 + a x + b

  bool is_p1() const { return kind == Kind::P1; }
  Poly rhs() const;  // x^3 + a x + b
  std::string to_string() const;
  bool operator==(const Curve& o) const;
};
using CurveRef = std::shared_ptr<const Curve>;

CurveRef p1_curve(FieldRef base);
CurveRef elliptic_curve(FieldRef base, const Elem& a, const Elem& b);
bool same_curve(const CurveRef& x, const CurveRef& y);

struct EPoint {
  bool inf = true;
  Elem x, y;
  static EPoint infinity() { return EPoint{}; }
  static EPoint affine(const Elem& x, const Elem& y) { return EPoint{false, x, y}; }
  FieldRef field() const { return inf ? nullptr : x.field(); }
  bool operator==(const EPoint& o) const;
  bool operator!=(const EPoint& o) const { return !(*this == o); }
  bool operator<(const EPoint& o) const;
  std::string to_string(const std::string& var = "z") const;
};

bool on_curve(const Curve& E, const EPoint& P);
EPoint ec_neg(const EPoint& P);
EPoint ec_add(const Curve& E, const EPoint& P, const EPoint& Q);
EPoint ec_mul(const Curve& E, const EPoint& P, i64 k);
EPoint ec_map(const EPoint& P, const Embedding& e);       // push coordinates through an embedding
EPoint ec_preimage(const EPoint& P, const Embedding& e);  // pull coordinates back
EPoint ec_frobenius(const EPoint& P, int k);              // coordinates to the p^k-th power
EPoint ec_in_field(const EPoint& P, FieldRef F);          // move coordinates into F (embed or pull back)
int point_degree(const EPoint& P);                        // degree of the field of definition
// All points of E over GF::standard(p, d), infinity first.
std::vector<EPoint> enumerate_points(const Curve& E, int d);

class Place {
 public:
  enum class Kind { Finite, Infinity, Split, Inert, Ramified, EllipticInfinity };

  CurveRef curve;
  Kind kind = Kind::Infinity;
  Poly pi;         // monic irreducible in t (P1) or x (elliptic)
  Poly s;          // split places: y = s(x) mod pi
  int degree = 1;  // [k(v):k]
  EPoint rep;      // elliptic: canonical orbit representative over GF::standard(p, degree)

  bool is_infinite() const { return kind == Kind::Infinity || kind == Kind::EllipticInfinity; }
  FieldRef residue_field() const;
  std::shared_ptr<const Embedding> pmap;  // elliptic: F_p[x]/(pi) -> residue_field(), x -> rep.x
  Elem eval_poly(const Poly& g) const;  // image of g(x) in k(v), g regular at pi
  std::string to_string() const;
  bool operator==(const Place& o) const;
  bool operator!=(const Place& o) const { return !(*this == o); }
  bool operator<(const Place& o) const;
};

Place p1_place(const CurveRef& C, const Poly& pi);
Place p1_infinity(const CurveRef& C);
Place elliptic_infinity(const CurveRef& E);
Place elliptic_place(const CurveRef& E, const EPoint& P);
std::vector<Place> places_over(const CurveRef& C, const Poly& pi);  // pi monic irreducible
std::vector<Place> places_of_degree(const CurveRef& C, int d);
Place least_place(const CurveRef& C);  // least degree-1 place

// Element (a + b y)/d of k(C); for P1, b = 0 and the variable is t.
class Function {
 public:
  Function() = default;
  static Function make(const CurveRef& C, const Poly& a, const Poly& b, const Poly& d);
  static Function constant(const CurveRef& C, const Elem& c);
  static Function from_int(const CurveRef& C, i64 c);
  static Function from_poly(const CurveRef& C, const Poly& a);
  static Function variable(const CurveRef& C);  // t or x
  static Function y(const CurveRef& E);

  const CurveRef& curve() const { return c_; }
  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }
  const Poly& d() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return b_.is_zero() && a_.is_one() && d_.is_one(); }
  bool is_constant() const { return b_.is_zero() && a_.degree() <= 0 && d_.is_one(); }
  Elem constant_value() const;

  Function operator+(const Function& o) const;
  Function operator-(const Function& o) const;
  Function operator-() const;
  Function operator*(const Function& o) const;
  Function operator/(const Function& o) const;
  Function inverse() const;
  Function pow(i64 e) const;
  bool operator==(const Function& o) const;
  bool operator!=(const Function& o) const { return !(*this == o); }
  bool operator<(const Function& o) const;
  // Norm to k(x): a^2 - b^2 (x^3+ax+b) over d^2, returned as (numerator, denominator).
  std::pair<Poly, Poly> norm_to_x() const;
  std::string to_string() const;

 private:
  CurveRef c_;
  Poly a_, b_, d_;
};

int valuation(const Function& f, const Place& v);
Elem reduce_at(const Function& f, const Place& v);
Function uniformizer(const Place& v);

class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(CurveRef C) : c_(std::move(C)) {}
  void add(const Place& P, i64 m);
  const std::vector<std::pair<Place, i64>>& terms() const { return t_; }
  i64 degree() const;
  i64 multiplicity(const Place& P) const;
  Divisor operator+(const Divisor& o) const;
  bool operator==(const Divisor& o) const;
  std::string to_string() const;

 private:
  CurveRef c_;
  std::vector<std::pair<Place, i64>> t_;  // sorted by place, nonzero
};

Divisor divisor(const Function& f);
std::vector<Place> support(const Function& f);
// Places where f vanishes.
std::vector<Place> zeros_of(const Function& f);

}  // namespace symk
