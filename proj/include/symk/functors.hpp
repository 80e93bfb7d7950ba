#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "symk/milnor.hpp"
#include "symk/tower.hpp"

namespace symk {

using Rng = std::mt19937_64;

// Section over the function field of a curve. Which fields are meaningful depends on the functor:
//   Gm: unit;  Res: lambda (in the split algebra) times unit;  Z, Z/m: integer;
//   E: constant point, plus the identity section when the curve is E itself;
//   h0: formal sum of points phi in X(k(C)), given by rational functions phi.
struct Section {
  CurveRef curve;
  Function unit;
  Elem lambda;
  i64 integer = 0;
  EPoint point;
  bool tautological = false;
  std::vector<std::pair<i64, Function>> points;
  std::string to_string() const;
};

// Units of the etale algebra (F_p[t]/M) x (F_p if infinity is included) after base change to T_d.
// Components over T_d are orbits of roots of M in the top field under the q^d-Frobenius; the
// coordinate of a unit on a component is the discrete log of its value at the least root.
class EtaleUnits {
 public:
  struct Component {
    int prime = 0;    // index into primes(), -1 for infinity
    Elem root;        // least root in the top field
    int level = 1;    // the component is F_{q^level}
  };

  EtaleUnits() = default;
  EtaleUnits(std::vector<Poly> primes, bool infinity) : primes_(std::move(primes)), inf_(infinity) {}
  void prepare(const FieldTower* T, int D);
  const std::vector<Poly>& primes() const { return primes_; }
  bool has_infinity() const { return inf_; }
  std::vector<int> degrees() const;

  const std::vector<Component>& components(int d) const { return comp_.at(d); }
  std::vector<Int> orders(int d) const;
  IntVec res(const IntVec& a, int d, int d2) const;
  IntVec tr(const IntVec& a, int d2, int d) const;
  IntVec frob(const IntVec& a, int d) const;
  IntVec diagonal(int d) const;  // image of gamma_d
  u64 coordinate(const Elem& value, const Component& c) const;  // value in the top field, in T_level

 private:
  std::pair<std::size_t, u64> locate(const Elem& root, int d) const;  // root = frob^(d i)(least root)
  const FieldTower* T_ = nullptr;
  std::vector<Poly> primes_;
  bool inf_ = false;
  std::map<int, std::vector<Component>> comp_;
  std::map<int, std::unordered_map<u64, std::pair<std::size_t, u64>>> where_;
};

class Functor {
 public:
  enum class Kind { Gm, Z, ZMod, Res, Elliptic, H0 };
  virtual ~Functor() = default;

  virtual Kind kind() const = 0;
  virtual std::string name() const = 0;
  virtual bool proper() const { return false; }
  virtual bool curve_like() const { return false; }
  virtual bool needs_prime_base() const { return false; }
  virtual std::vector<int> extra_degrees() const { return {}; }  // residue degrees the tower must contain

  // Builds the value groups F(T_d), d <= D. Single-threaded; afterwards the functor is read-only.
  void prepare(std::shared_ptr<const FieldTower> T, int D);
  const FieldTower& tower() const { return *T_; }
  int max_level() const { return D_; }
  const QuotientGroup& group(int d) const { return groups_.at(static_cast<std::size_t>(d)); }
  IntVec coords(const IntVec& raw, int d) const { return group(d).coords(raw); }
  std::vector<IntVec> elements(int d) const;  // every element as a raw vector (finite groups only)

  // Raw coordinate maps: restriction T_d -> T_d2, trace T_d2 -> T_d, Frobenius on T_d.
  virtual IntVec res(const IntVec& a, int d, int d2) const = 0;
  virtual IntVec tr(const IntVec& a, int d2, int d) const = 0;
  virtual IntVec frob(const IntVec& a, int d) const = 0;
  virtual IntVec zero(int d) const;
  // Basis of cocharacters over T_d, given as raw images of gamma_d.
  virtual std::vector<IntVec> cocharacters(int) const { return {}; }
  IntVec apply_cocharacter(const IntVec& chi, const Elem& a, int d) const;  // a in T_d (top coordinates)
  virtual std::string value_string(const IntVec& raw, int d) const;

  virtual bool is_regular(const Section& s, const Place& v) const = 0;
  virtual IntVec reduce(const Section& s, const Place& v) const = 0;  // raw at level deg v
  // d_v(s, h); regular sections give v(h) reduce(s, v).
  virtual IntVec local_symbol(const Section& s, const Function& h, const Place& v) const;
  // Same symbol through the toric (tame symbol) path where one exists; Unsupported otherwise.
  virtual IntVec local_symbol_toric(const Section& s, const Function& h, const Place& v) const;
  virtual std::vector<Place> irregular_places(const Section& s) const = 0;
  virtual Section random_section(const CurveRef& C, Rng& rng, int H) const = 0;
  virtual bool supports_curve(const CurveRef&) const { return true; }

 protected:
  virtual void setup() {}  // per-tower data, runs before build
  virtual QuotientGroup build(int d) = 0;
  IntVec scale(IntVec a, i64 k) const;
  int level_of(const Place& v) const;  // deg v, checked against the tower
  std::shared_ptr<const FieldTower> T_;
  int D_ = 0;
  std::vector<QuotientGroup> groups_;
};
using FunctorRef = std::shared_ptr<Functor>;

// "Gm", "Z", "Z/6", "Res(GF(9))Gm", "E/GF(5):y^2=x^3+x+1", "h0(P1 minus {(t^2+1),inf})"
FunctorRef make_functor(const std::string& literal, FieldRef base);

class GmFunctor : public Functor {
 public:
  Kind kind() const override { return Kind::Gm; }
  std::string name() const override { return "Gm"; }
  IntVec res(const IntVec& a, int d, int d2) const override;
  IntVec tr(const IntVec& a, int d2, int d) const override;
  IntVec frob(const IntVec& a, int d) const override;
  std::vector<IntVec> cocharacters(int d) const override;
  std::string value_string(const IntVec& raw, int d) const override;
  bool is_regular(const Section& s, const Place& v) const override;
  IntVec reduce(const Section& s, const Place& v) const override;
  IntVec local_symbol(const Section& s, const Function& h, const Place& v) const override;
  IntVec local_symbol_toric(const Section& s, const Function& h, const Place& v) const override;
  std::vector<Place> irregular_places(const Section& s) const override;
  Section random_section(const CurveRef& C, Rng& rng, int H) const override;
  IntVec of_element(const Elem& x, int d) const;  // x in any field of order q^d

 protected:
  QuotientGroup build(int d) override;
};

class ZFunctor : public Functor {
 public:
  explicit ZFunctor(u64 m) : m_(m) {}  // m = 0 for Z
  Kind kind() const override { return m_ ? Kind::ZMod : Kind::Z; }
  std::string name() const override { return m_ ? "Z/" + std::to_string(m_) : "Z"; }
  IntVec res(const IntVec& a, int d, int d2) const override;
  IntVec tr(const IntVec& a, int d2, int d) const override;
  IntVec frob(const IntVec& a, int d) const override;
  bool is_regular(const Section&, const Place&) const override { return true; }
  IntVec reduce(const Section& s, const Place& v) const override;
  std::vector<Place> irregular_places(const Section&) const override { return {}; }
  Section random_section(const CurveRef& C, Rng& rng, int H) const override;

 protected:
  QuotientGroup build(int d) override;

 private:
  u64 m_;
};

// Weil restriction R_{E/k} Gm for E = GF(p^e) over a prime base.
class ResFunctor : public Functor {
 public:
  explicit ResFunctor(FieldRef E);
  Kind kind() const override { return Kind::Res; }
  std::string name() const override;
  bool needs_prime_base() const override { return true; }
  std::vector<int> extra_degrees() const override { return units_.degrees(); }
  FieldRef split_field() const { return E_; }
  IntVec res(const IntVec& a, int d, int d2) const override { return units_.res(a, d, d2); }
  IntVec tr(const IntVec& a, int d2, int d) const override { return units_.tr(a, d2, d); }
  IntVec frob(const IntVec& a, int d) const override { return units_.frob(a, d); }
  std::vector<IntVec> cocharacters(int d) const override;
  bool is_regular(const Section& s, const Place& v) const override;
  IntVec reduce(const Section& s, const Place& v) const override;
  IntVec local_symbol(const Section& s, const Function& h, const Place& v) const override;
  IntVec local_symbol_toric(const Section& s, const Function& h, const Place& v) const override;
  std::vector<Place> irregular_places(const Section& s) const override;
  Section random_section(const CurveRef& C, Rng& rng, int H) const override;
  // The unit inclusion Gm -> R_{E/k} Gm.
  IntVec unit_inclusion(const Elem& a, int d) const;

 protected:
  void setup() override { units_.prepare(T_.get(), D_); }
  QuotientGroup build(int d) override;

 private:
  IntVec values_at(const Elem& lambda, const Elem& x, int d) const;  // lambda (x) x, x in T_d
  FieldRef E_;
  EtaleUnits units_;
};

class EllipticFunctor : public Functor {
 public:
  explicit EllipticFunctor(CurveRef E) : E_(std::move(E)) {}
  Kind kind() const override { return Kind::Elliptic; }
  std::string name() const override;
  bool proper() const override { return true; }
  bool needs_prime_base() const override { return true; }
  const CurveRef& curve() const { return E_; }
  IntVec res(const IntVec& a, int d, int d2) const override;
  IntVec tr(const IntVec& a, int d2, int d) const override;
  IntVec frob(const IntVec& a, int d) const override;
  std::string value_string(const IntVec& raw, int d) const override;
  bool is_regular(const Section&, const Place&) const override { return true; }
  IntVec reduce(const Section& s, const Place& v) const override;
  std::vector<Place> irregular_places(const Section&) const override { return {}; }
  Section random_section(const CurveRef& C, Rng& rng, int H) const override;
  EPoint point_of(const IntVec& raw, int d) const;  // top coordinates
  IntVec raw_of(const EPoint& P, int d) const;      // P with top coordinates, in E(T_d)

 protected:
  void setup() override { lv_.clear(); }
  QuotientGroup build(int d) override;

 private:
  struct Level {
    EPoint P, R;  // generators; raw (a, b) means aP + bR
    i64 nP = 1, nR = 1;
    std::map<EPoint, std::pair<i64, i64>> table;
  };
  CurveRef E_;
  std::map<int, Level> lv_;
};

// h0 of X = P1 minus D over a prime base: Z (degree) + units of D modulo constants.
class H0Functor : public Functor {
 public:
  H0Functor(CurveRef P1, std::vector<Place> D);
  Kind kind() const override { return Kind::H0; }
  std::string name() const override;
  bool curve_like() const override { return true; }
  bool needs_prime_base() const override { return true; }
  std::vector<int> extra_degrees() const override { return units_.degrees(); }
  const std::vector<Place>& removed() const { return D_places_; }
  const Place& base_point() const { return base_; }
  IntVec res(const IntVec& a, int d, int d2) const override;
  IntVec tr(const IntVec& a, int d2, int d) const override;
  IntVec frob(const IntVec& a, int d) const override;
  std::vector<IntVec> cocharacters(int d) const override;
  bool is_regular(const Section& s, const Place& v) const override;
  IntVec reduce(const Section& s, const Place& v) const override;
  IntVec local_symbol_toric(const Section& s, const Function& h, const Place& v) const override;
  std::vector<Place> irregular_places(const Section& s) const override;
  Section random_section(const CurveRef& C, Rng& rng, int H) const override;
  // Class of a T_d-point of X (top coordinates; nullopt is infinity).
  IntVec point_class(const std::optional<Elem>& rho, int d) const;
  // The tautological section: the generic point of X over k(P1).
  Section tautological(const CurveRef& C) const;
  bool in_removed(const std::optional<Elem>& rho) const;  // rho a point of P1 over the top field
  // Torsion order of the toric part T(T_d) = coker(T_d^* -> units of D).
  Int toric_order(int d) const;

 protected:
  void setup() override { units_.prepare(T_.get(), D_); }
  QuotientGroup build(int d) override;

 private:
  std::optional<Elem> value_at(const Function& phi, const Place& v) const;
  Function toric_coordinate(const Section& s, std::size_t prime) const;  // degree-one removed places only
  CurveRef P1_;
  std::vector<Place> D_places_;
  Place base_;
  EtaleUnits units_;
};

Function compose(const Poly& g, const Function& phi);  // g(phi)
Poly random_poly(FieldRef k, Rng& rng, int deg);      // exact degree deg, random coefficients
Function random_function(const CurveRef& C, Rng& rng, int H);  // nonzero, numerator and denominator degree <= H
std::string functor_kind_name(Functor::Kind k);

}  // namespace symk
