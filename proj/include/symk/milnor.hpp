#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symk/curve.hpp"

namespace symk {

template <class T>
struct MilnorContext;
template <>
struct MilnorContext<Elem> {
  using type = FieldRef;
};
template <>
struct MilnorContext<Function> {
  using type = CurveRef;
};

// Formal integer combination of degree-n symbols {a_1, ..., a_n}; like symbols are merged.
template <class T>
class MilnorElement {
 public:
  using Symbol = std::vector<T>;
  using Context = typename MilnorContext<T>::type;

  MilnorElement() = default;
  MilnorElement(Context ctx, int degree) : ctx_(ctx), n_(degree) {}
  static MilnorElement symbol(Context ctx, Symbol s, i64 c = 1) {
    MilnorElement x(ctx, static_cast<int>(s.size()));
    x.add(std::move(s), c);
    return x;
  }
  static MilnorElement integer(Context ctx, i64 c) { return symbol(ctx, {}, c); }

  const Context& context() const { return ctx_; }
  int degree() const { return n_; }
  const std::map<Symbol, i64>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }

  void add(Symbol s, i64 c) {
    require(static_cast<int>(s.size()) == n_, ErrorKind::Internal, "symbol degree mismatch");
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(std::move(s), c);
    if (!fresh && (it->second += c) == 0) t_.erase(it);
  }
  MilnorElement& operator+=(const MilnorElement& o) {
    for (auto& [s, c] : o.t_) add(s, c);
    return *this;
  }
  MilnorElement operator+(const MilnorElement& o) const {
    MilnorElement r = *this;
    r += o;
    return r;
  }
  MilnorElement operator*(i64 k) const {
    MilnorElement r(ctx_, n_);
    for (auto& [s, c] : t_) r.add(s, c * k);
    return r;
  }
  MilnorElement operator-() const { return *this * -1; }
  MilnorElement operator-(const MilnorElement& o) const { return *this + (-o); }
  bool operator==(const MilnorElement& o) const { return n_ == o.n_ && t_ == o.t_; }  // formal equality

 private:
  Context ctx_{};
  int n_ = 0;
  std::map<Symbol, i64> t_;
};

using FiniteMilnor = MilnorElement<Elem>;
using FunctionMilnor = MilnorElement<Function>;

std::string to_string(const FiniteMilnor& x);
std::string to_string(const FunctionMilnor& x);

// Coefficients k_c with sum k_c log(c) log(1-c) = 1 mod (q-1); empty when the group is killed trivially.
struct SteinbergCertificate {
  std::vector<std::pair<Elem, Int>> combination;
  bool theorem_backed = false;  // search budget exhausted; vanishing asserted from K_2 of finite fields
};

// Class in K_n^M of a finite field: n = 0 an integer, n = 1 a discrete log mod q-1, n >= 2 zero.
struct FiniteClass {
  FieldRef field = nullptr;
  int degree = 0;
  Int value = 0;
  Int modulus = 0;  // 0 for Z, q - 1 for K_1, 1 for K_n (n >= 2)
  std::optional<SteinbergCertificate> certificate;

  bool is_zero() const { return value == 0; }
  bool operator==(const FiniteClass& o) const {
    return field == o.field && degree == o.degree && value == o.value;
  }
  bool operator!=(const FiniteClass& o) const { return !(*this == o); }
  std::string to_string() const;
};

FiniteClass steinberg_reduce(const FiniteMilnor& x);
// Verify that the certificate reduces {g, g} to Steinberg elements.
bool verify_certificate(FieldRef F, const SteinbergCertificate& c);
FiniteMilnor transfer(const FiniteMilnor& x, FieldRef target);

// Residue at v; the class is computed with the classical normalization
// d{f,g} = (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} and its multilinear extension.
FiniteMilnor tame_symbol(const FunctionMilnor& x, const Place& v,
                         const std::optional<Function>& uniformizer = std::nullopt);

struct ResidueEntry {
  Place place;
  FiniteMilnor residue;   // over k(v)
  FiniteClass transferred;  // N_{k(v)/k} of the residue
};
struct ReciprocityResult {
  std::vector<ResidueEntry> table;
  FiniteClass total;
  bool ok = false;
};
ReciprocityResult weil_reciprocity_check(const FunctionMilnor& x);

// Places where some entry of x has a zero or pole, together with infinity; sorted.
std::vector<Place> milnor_support(const FunctionMilnor& x);

struct MilnorNormalForm {
  int degree = 0;
  bool exact = true;  // false on elliptic function fields for degree >= 2 (necessary condition only)
  Int integer = 0;                                    // degree 0
  std::optional<Function> unit;                       // degree 1
  std::vector<std::pair<Place, FiniteClass>> residues;  // degree >= 2, finite places, nonzero only
  std::vector<std::pair<Place, FiniteClass>> at_infinity;  // recorded, not part of the key

  bool is_zero() const;
  bool operator==(const MilnorNormalForm& o) const;
  bool operator!=(const MilnorNormalForm& o) const { return !(*this == o); }
  std::string to_string() const;
};
MilnorNormalForm normal_form(const FunctionMilnor& x);
bool milnor_equal(const FunctionMilnor& x, const FunctionMilnor& y);

struct RewriteResult {
  FunctionMilnor value;
  int steps = 0;  // symbols that had to be rewritten
};
// Degree-2 x rewritten so that every second entry is a unit at every place of Z (C = P1).
RewriteResult semilocal_rewrite(const FunctionMilnor& x, const std::vector<Place>& Z);
// Degree r+1 x rewritten so that the first r entries of each symbol have disjoint supports (C = P1).
RewriteResult general_position(const FunctionMilnor& x);
bool in_general_position(const FunctionMilnor& x);

// "2*{t,t-1} - {t+2,t+3}" over C; "{2,3}" over a finite field.
FunctionMilnor parse_milnor(const std::string& s, const CurveRef& C);
FiniteMilnor parse_finite_milnor(const std::string& s, FieldRef F);

}  // namespace symk
