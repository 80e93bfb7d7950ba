#include "symk/functors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "symk/parse.hpp"

namespace symk {

namespace {

Int nmod(const Int& x, const Int& m) {
  if (m == 0) return x;
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

Int big(u64 v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

// Product of the degree-one symbols of x as a single element of its field.
Elem collapse(const FiniteMilnor& x, FieldRef F) {
  Elem r = F->one();
  for (auto& [s, c] : x.terms()) r = r * pow_signed(s.at(0), c);
  return r;
}

Elem tame_unit(const Function& u, const Function& h, const Place& v) {
  FunctionMilnor x = FunctionMilnor::symbol(u.curve(), {u, h});
  return collapse(tame_symbol(x, v), v.residue_field());
}

// lambda, a polynomial in the generator of its field, evaluated at rho.
Elem eval_at(const Elem& lambda, const Elem& rho) {
  FieldRef F = lambda.field(), top = rho.field();
  Elem r = top->zero();
  for (int i = F->degree() - 1; i >= 0; --i) r = r * rho + top->from_int(lambda.coeff(i));
  return r;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

// ---- helpers ----

Function compose(const Poly& g, const Function& phi) {
  const CurveRef& C = phi.curve();
  Function r = Function::from_int(C, 0);
  for (int i = g.degree(); i >= 0; --i) r = r * phi + Function::constant(C, g.coeff(i));
  return r;
}

Poly random_poly(FieldRef k, Rng& rng, int deg) {
  std::vector<Elem> c;
  for (int i = 0; i <= deg; ++i) c.push_back(k->from_index(rng() % k->order()));
  if (c.back().is_zero()) c.back() = k->one();
  return Poly(k, c);
}

Function random_function(const CurveRef& C, Rng& rng, int H) {
  FieldRef k = C->base;
  for (;;) {
    int da = static_cast<int>(rng() % (H + 1)), dd = static_cast<int>(rng() % (H + 1));
    Poly a = random_poly(k, rng, da), d = random_poly(k, rng, dd), b(k);
    if (!C->is_p1() && rng() % 2) b = random_poly(k, rng, static_cast<int>(rng() % 2));
    Function f = Function::make(C, a, b, d);
    if (!f.is_zero()) return f;
  }
}

std::string functor_kind_name(Functor::Kind k) {
  switch (k) {
    case Functor::Kind::Gm: return "Gm";
    case Functor::Kind::Z: return "Z";
    case Functor::Kind::ZMod: return "Z/m";
    case Functor::Kind::Res: return "Res";
    case Functor::Kind::Elliptic: return "E";
    case Functor::Kind::H0: return "h0";
  }
  return "?";
}

std::string Section::to_string() const {
  std::ostringstream o;
  if (!points.empty()) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) o << " + ";
      o << points[i].first << "*[" << points[i].second.to_string() << "]";
    }
  } else if (lambda.field()) {
    o << symk::to_string(lambda) << " (x) " << unit.to_string();
  } else if (unit.curve()) {
    o << unit.to_string();
  } else if (tautological || !point.inf) {
    o << point.to_string();
    if (tautological) o << " + id";
  } else {
    o << integer;
  }
  return o.str();
}

// ---- EtaleUnits ----

std::vector<int> EtaleUnits::degrees() const {
  std::vector<int> r;
  for (auto& p : primes_) r.push_back(p.degree());
  return r;
}

void EtaleUnits::prepare(const FieldTower* T, int D) {
  T_ = T;
  comp_.clear();
  where_.clear();
  for (int d = 1; d <= D; ++d) {
    if (!T->has_level(d)) continue;
    std::vector<Component>& cs = comp_[d];
    auto& wh = where_[d];
    for (std::size_t j = 0; j < primes_.size(); ++j) {
      const Poly& pi = primes_[j];
      int e = pi.degree();
      int g = std::gcd(d, e), L = d / g * e;
      require(T->has_level(L), ErrorKind::DegreeOverflow, "component level " + std::to_string(L) + " not in tower");
      Elem r0 = T->embed(residue_of(Poly::x(pi.field()), pi));
      std::vector<Elem> roots;
      for (int k = 0; k < e; ++k) roots.push_back(T->frob(r0, k));
      for (int c = 0; c < g; ++c) {
        Elem least = roots[c];
        for (int k = c; k < e; k += g) least = std::min(least, roots[k]);
        cs.push_back(Component{static_cast<int>(j), least, L});
        for (int i = 0; i < e / g; ++i) wh[T->frob(least, static_cast<i64>(d) * i).index()] = {cs.size() - 1, u64(i)};
      }
    }
    if (inf_) cs.push_back(Component{-1, Elem(), d});
  }
}

std::pair<std::size_t, u64> EtaleUnits::locate(const Elem& root, int d) const {
  auto& wh = where_.at(d);
  auto it = wh.find(root.index());
  require(it != wh.end(), ErrorKind::Internal, "root not found in etale algebra");
  return it->second;
}

std::vector<Int> EtaleUnits::orders(int d) const {
  std::vector<Int> r;
  for (auto& c : comp_.at(d)) r.push_back(big(T_->units(c.level)));
  return r;
}

u64 EtaleUnits::coordinate(const Elem& value, const Component& c) const { return T_->dlog(value, c.level); }

IntVec EtaleUnits::res(const IntVec& a, int d, int d2) const {
  auto& src = comp_.at(d);
  auto& dst = comp_.at(d2);
  IntVec r(dst.size());
  for (std::size_t o2 = 0; o2 < dst.size(); ++o2) {
    const Component& c2 = dst[o2];
    if (c2.prime < 0) {
      r[o2] = nmod(a.at(src.size() - 1) * big(T_->units(d2) / T_->units(d)), big(T_->units(d2)));
      continue;
    }
    auto [o, i] = locate(c2.root, d);
    const Component& c = src[o];
    Int v = a.at(o) * big(T_->qpow(static_cast<u64>(d) * i)) * big(T_->units(c2.level) / T_->units(c.level));
    r[o2] = nmod(v, big(T_->units(c2.level)));
  }
  return r;
}

IntVec EtaleUnits::tr(const IntVec& a, int d2, int d) const {
  auto& dst = comp_.at(d);
  auto& src = comp_.at(d2);
  IntVec r(dst.size());
  Int M = big(T_->units(T_->N()));
  for (std::size_t o = 0; o < dst.size(); ++o) {
    const Component& c = dst[o];
    if (c.prime < 0) {
      r[o] = nmod(a.at(src.size() - 1), big(T_->units(d)));
      continue;
    }
    Int total = 0;
    for (int k = 0; k < d2 / d; ++k) {
      Elem root = T_->frob(c.root, -static_cast<i64>(d) * k);
      auto [o2, i2] = locate(root, d2);
      u64 e = static_cast<u64>(d) * k + static_cast<u64>(d2) * i2;
      total += big(T_->qpow(e)) * big(T_->lift(src[o2].level)) * a.at(o2);
    }
    total = nmod(total, M);
    Int l = big(T_->lift(c.level));
    require(total % l == 0, ErrorKind::Internal, "norm left its component field");
    r[o] = total / l;
  }
  return r;
}

IntVec EtaleUnits::frob(const IntVec& a, int d) const {
  auto& cs = comp_.at(d);
  IntVec r(cs.size());
  for (std::size_t o = 0; o < cs.size(); ++o) {
    const Component& c = cs[o];
    if (c.prime < 0) {
      r[o] = nmod(a.at(o) * big(T_->q()), big(T_->units(d)));
      continue;
    }
    auto [o2, i] = locate(T_->frob(c.root, -1), d);
    r[o] = nmod(a.at(o2) * big(T_->qpow(1 + static_cast<u64>(d) * i)), big(T_->units(c.level)));
  }
  return r;
}

IntVec EtaleUnits::diagonal(int d) const {
  IntVec r;
  for (auto& c : comp_.at(d)) r.push_back(big(T_->units(c.level) / T_->units(d)));
  return r;
}

// ---- Functor ----

void Functor::prepare(std::shared_ptr<const FieldTower> T, int D) {
  T_ = std::move(T);
  D_ = D;
  setup();
  groups_.assign(static_cast<std::size_t>(D) + 1, QuotientGroup());
  for (int d = 1; d <= D; ++d) {
    require(T_->has_level(d), ErrorKind::DegreeOverflow, "level " + std::to_string(d) + " not in tower");
    groups_[static_cast<std::size_t>(d)] = build(d);
  }
}

std::vector<IntVec> Functor::elements(int d) const {
  const QuotientGroup& G = group(d);
  const auto& ord = G.orders();
  Int total = 1;
  for (auto& o : ord) {
    require(o != 0, ErrorKind::TooLarge, name() + " has infinite values");
    total *= o;
    require(total <= (1 << 22), ErrorKind::TooLarge, name() + " value group too large to enumerate");
  }
  std::vector<IntVec> out;
  std::vector<Int> c(ord.size(), 0);
  for (;;) {
    IntVec raw(G.raw_rank(), 0);
    for (std::size_t i = 0; i < ord.size(); ++i)
      for (std::size_t k = 0; k < raw.size(); ++k) raw[k] += c[i] * G.basis_raw(i)[k];
    out.push_back(raw);
    std::size_t i = 0;
    while (i < ord.size() && ++c[i] == ord[i]) c[i++] = 0;
    if (i == ord.size()) break;
  }
  return out;
}

IntVec Functor::zero(int d) const { return IntVec(group(d).raw_rank(), 0); }

IntVec Functor::apply_cocharacter(const IntVec& chi, const Elem& a, int d) const {
  return scale(chi, static_cast<i64>(T_->dlog(a, d)));
}

std::string Functor::value_string(const IntVec& raw, int d) const {
  IntVec c = coords(raw, d);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + symk::to_string(c[i]);
  return s + ")";
}

IntVec Functor::local_symbol(const Section& s, const Function& h, const Place& v) const {
  if (is_regular(s, v)) return scale(reduce(s, v), valuation(h, v));
  Function h1 = h - Function::from_int(h.curve(), 1);
  if (!h1.is_zero() && valuation(h1, v) > 0) return zero(level_of(v));
  return local_symbol_toric(s, h, v);
}

IntVec Functor::local_symbol_toric(const Section&, const Function&, const Place& v) const {
  fail(ErrorKind::Unsupported, "local symbol of an irregular " + name() + " section at " + v.to_string());
}

IntVec Functor::scale(IntVec a, i64 k) const {
  for (auto& x : a) x *= k;
  return a;
}

int Functor::level_of(const Place& v) const {
  require(v.degree <= D_ && T_->has_level(v.degree), ErrorKind::DegreeOverflow,
          "place " + v.to_string() + " has degree above the bound " + std::to_string(D_));
  return v.degree;
}

// ---- Gm ----

QuotientGroup GmFunctor::build(int d) { return QuotientGroup({big(T_->units(d))}, {}); }

IntVec GmFunctor::res(const IntVec& a, int d, int d2) const {
  return {nmod(a.at(0) * big(T_->units(d2) / T_->units(d)), big(T_->units(d2)))};
}
IntVec GmFunctor::tr(const IntVec& a, int, int d) const { return {nmod(a.at(0), big(T_->units(d)))}; }
IntVec GmFunctor::frob(const IntVec& a, int d) const { return {nmod(a.at(0) * big(T_->q()), big(T_->units(d)))}; }
std::vector<IntVec> GmFunctor::cocharacters(int) const { return {{Int(1)}}; }

std::string GmFunctor::value_string(const IntVec& raw, int d) const {
  Int k = nmod(raw.at(0), big(T_->units(d)));
  if (d == 1) return symk::to_string(T_->pull(pow(T_->gamma(1), k), T_->base()));
  return "g" + std::to_string(d) + "^" + symk::to_string(k);
}

IntVec GmFunctor::of_element(const Elem& x, int d) const { return {big(T_->dlog(T_->embed(x), d))}; }
bool GmFunctor::is_regular(const Section& s, const Place& v) const { return valuation(s.unit, v) == 0; }

IntVec GmFunctor::reduce(const Section& s, const Place& v) const {
  require(is_regular(s, v), ErrorKind::NotRegular, s.unit.to_string() + " at " + v.to_string());
  return of_element(reduce_at(s.unit, v), level_of(v));
}

IntVec GmFunctor::local_symbol(const Section& s, const Function& h, const Place& v) const {
  return local_symbol_toric(s, h, v);
}

IntVec GmFunctor::local_symbol_toric(const Section& s, const Function& h, const Place& v) const {
  int d = level_of(v);
  return of_element(tame_unit(s.unit, h, v), d);
}

std::vector<Place> GmFunctor::irregular_places(const Section& s) const { return support(s.unit); }

Section GmFunctor::random_section(const CurveRef& C, Rng& rng, int H) const {
  Section s;
  s.curve = C;
  s.unit = random_function(C, rng, H);
  return s;
}

// ---- Z and Z/m ----

QuotientGroup ZFunctor::build(int) { return QuotientGroup({big(m_)}, {}); }
IntVec ZFunctor::res(const IntVec& a, int, int) const { return a; }
IntVec ZFunctor::tr(const IntVec& a, int d2, int d) const { return {nmod(a.at(0) * (d2 / d), big(m_))}; }
IntVec ZFunctor::frob(const IntVec& a, int) const { return a; }
IntVec ZFunctor::reduce(const Section& s, const Place& v) const {
  level_of(v);
  return {nmod(Int(static_cast<long>(s.integer)), big(m_))};
}

Section ZFunctor::random_section(const CurveRef& C, Rng& rng, int) const {
  Section s;
  s.curve = C;
  s.integer = m_ ? static_cast<i64>(rng() % m_) : static_cast<i64>(rng() % 7) - 3;
  return s;
}

// ---- R_{E/k} Gm ----

ResFunctor::ResFunctor(FieldRef E) : E_(E) {
  FieldRef k = GF::prime(E->characteristic());
  Poly M = Poly::x(k);
  if (E->degree() > 1) {
    std::vector<Elem> c;
    for (u32 x : E->modulus()) c.push_back(k->from_int(x));
    M = Poly(k, c);
  }
  units_ = EtaleUnits({M}, false);
}

std::string ResFunctor::name() const { return "Res(" + E_->to_string() + ")Gm"; }

QuotientGroup ResFunctor::build(int d) { return QuotientGroup(units_.orders(d), {}); }

std::vector<IntVec> ResFunctor::cocharacters(int d) const {
  IntVec diag = units_.diagonal(d);
  std::vector<IntVec> r;
  for (std::size_t o = 0; o < diag.size(); ++o) {
    IntVec v(diag.size(), 0);
    v[o] = diag[o];
    r.push_back(v);
  }
  return r;
}

IntVec ResFunctor::values_at(const Elem& lambda, const Elem& x, int d) const {
  IntVec r;
  for (auto& c : units_.components(d)) r.push_back(big(units_.coordinate(eval_at(lambda, c.root) * x, c)));
  return r;
}

IntVec ResFunctor::unit_inclusion(const Elem& a, int d) const { return values_at(E_->one(), T_->embed(a), d); }

bool ResFunctor::is_regular(const Section& s, const Place& v) const { return valuation(s.unit, v) == 0; }

IntVec ResFunctor::reduce(const Section& s, const Place& v) const {
  require(is_regular(s, v), ErrorKind::NotRegular, s.to_string() + " at " + v.to_string());
  return values_at(s.lambda, T_->embed(reduce_at(s.unit, v)), level_of(v));
}

IntVec ResFunctor::local_symbol(const Section& s, const Function& h, const Place& v) const {
  return local_symbol_toric(s, h, v);
}

IntVec ResFunctor::local_symbol_toric(const Section& s, const Function& h, const Place& v) const {
  int d = level_of(v);
  Elem t = T_->embed(tame_unit(s.unit, h, v));
  i64 vh = valuation(h, v);
  IntVec r;
  for (auto& c : units_.components(d))
    r.push_back(big(units_.coordinate(pow_signed(eval_at(s.lambda, c.root), vh) * t, c)));
  return r;
}

std::vector<Place> ResFunctor::irregular_places(const Section& s) const { return support(s.unit); }

Section ResFunctor::random_section(const CurveRef& C, Rng& rng, int H) const {
  Section s;
  s.curve = C;
  do s.lambda = E_->from_index(rng() % E_->order());
  while (s.lambda.is_zero());
  s.unit = random_function(C, rng, H);
  return s;
}

// ---- elliptic curves ----

std::string EllipticFunctor::name() const { return E_->to_string(); }

QuotientGroup EllipticFunctor::build(int d) {
  FieldRef top = T_->top();
  std::vector<EPoint> pts;
  for (auto& P : enumerate_points(*E_, d)) pts.push_back(ec_in_field(P, top));
  i64 N = static_cast<i64>(pts.size());
  auto fac = factor_u64(static_cast<u64>(N));
  auto order = [&](const EPoint& P) {
    i64 k = N;
    for (auto& [p, e] : fac)
      while (k % static_cast<i64>(p) == 0 && ec_mul(*E_, P, k / static_cast<i64>(p)).inf) k /= static_cast<i64>(p);
    return k;
  };
  Level L;
  L.P = EPoint::infinity();
  for (auto& P : pts) {
    i64 o = order(P);
    if (o > L.nP) L.nP = o, L.P = P;
  }
  std::map<EPoint, i64> multiples;
  EPoint m = EPoint::infinity();
  for (i64 j = 0; j < L.nP; ++j, m = ec_add(*E_, m, L.P)) multiples[m] = j;
  i64 want = N / L.nP, jR = 0;
  L.R = EPoint::infinity();
  for (auto& Q : pts) {
    i64 k = 1;
    EPoint kQ = Q;
    while (!multiples.count(kQ)) kQ = ec_add(*E_, kQ, Q), ++k;
    if (k > L.nR) L.nR = k, L.R = Q, jR = multiples[kQ];
    if (L.nR == want) break;
  }
  require(L.nR == want, ErrorKind::Internal, "elliptic group structure");
  EPoint b = EPoint::infinity();
  for (i64 j = 0; j < L.nR; ++j, b = ec_add(*E_, b, L.R)) {
    EPoint a = b;
    for (i64 i = 0; i < L.nP; ++i, a = ec_add(*E_, a, L.P)) L.table[a] = {i, j};
  }
  require(static_cast<i64>(L.table.size()) == N, ErrorKind::Internal, "elliptic point table");
  lv_[d] = std::move(L);
  const Level& l = lv_[d];
  return QuotientGroup({Int(static_cast<long>(l.nP)), Int(0)}, {{Int(static_cast<long>(-jR)), Int(static_cast<long>(l.nR))}});
}

EPoint EllipticFunctor::point_of(const IntVec& raw, int d) const {
  const Level& L = lv_.at(d);
  i64 N = L.nP * L.nR;
  i64 a = nmod(raw.at(0), Int(static_cast<long>(L.nP))).get_si();
  i64 b = nmod(raw.at(1), Int(static_cast<long>(N))).get_si();
  return ec_add(*E_, ec_mul(*E_, L.P, a), ec_mul(*E_, L.R, b));
}

IntVec EllipticFunctor::raw_of(const EPoint& P, int d) const {
  const Level& L = lv_.at(d);
  auto it = L.table.find(P);
  require(it != L.table.end(), ErrorKind::Internal, "point not in E(T_" + std::to_string(d) + ")");
  return {Int(static_cast<long>(it->second.first)), Int(static_cast<long>(it->second.second))};
}

IntVec EllipticFunctor::res(const IntVec& a, int d, int d2) const { return raw_of(point_of(a, d), d2); }

IntVec EllipticFunctor::tr(const IntVec& a, int d2, int d) const {
  EPoint P = point_of(a, d2), S = EPoint::infinity();
  for (int k = 0; k < d2 / d; ++k) S = ec_add(*E_, S, ec_frobenius(P, d * k * T_->base()->degree()));
  return raw_of(S, d);
}

IntVec EllipticFunctor::frob(const IntVec& a, int d) const {
  return raw_of(ec_frobenius(point_of(a, d), T_->base()->degree()), d);
}

std::string EllipticFunctor::value_string(const IntVec& raw, int d) const {
  EPoint P = point_of(raw, d);
  if (P.inf) return "O";
  return ec_in_field(P, GF::standard(E_->base->characteristic(), d)).to_string();
}

IntVec EllipticFunctor::reduce(const Section& s, const Place& v) const {
  int d = level_of(v);
  EPoint P = s.point.inf ? EPoint::infinity() : ec_in_field(s.point, T_->top());
  if (s.tautological) {
    require(same_curve(v.curve, E_), ErrorKind::UsageError, "identity section lives on " + E_->to_string());
    if (!v.is_infinite()) P = ec_add(*E_, P, ec_in_field(v.rep, T_->top()));
  }
  return raw_of(P, d);
}

Section EllipticFunctor::random_section(const CurveRef& C, Rng& rng, int) const {
  auto pts = enumerate_points(*E_, 1);
  Section s;
  s.curve = C;
  s.point = pts[rng() % pts.size()];
  s.tautological = same_curve(C, E_) && rng() % 2;
  return s;
}

// ---- h0(P1 minus D) ----

H0Functor::H0Functor(CurveRef P1, std::vector<Place> D) : P1_(std::move(P1)), D_places_(std::move(D)) {
  require(P1_->is_p1(), ErrorKind::UsageError, "h0 is implemented for open subsets of P1");
  std::sort(D_places_.begin(), D_places_.end());
  D_places_.erase(std::unique(D_places_.begin(), D_places_.end()), D_places_.end());
  std::vector<Poly> primes;
  bool inf = false;
  for (auto& v : D_places_) {
    require(same_curve(v.curve, P1_), ErrorKind::FieldMismatch, "removed place on another curve");
    if (v.is_infinite())
      inf = true;
    else
      primes.push_back(v.pi);
  }
  units_ = EtaleUnits(primes, inf);
  FieldRef k = P1_->base;
  bool found = false;
  for (u64 c = 0; c < k->order() && !found; ++c) {
    Place b = p1_place(P1_, Poly::linear(k->from_index(c)));
    if (!std::count(D_places_.begin(), D_places_.end(), b)) base_ = b, found = true;
  }
  if (!found && !inf) base_ = p1_infinity(P1_), found = true;
  require(found, ErrorKind::Unsupported, "P1 minus D has no rational point");
}

std::string H0Functor::name() const {
  std::string s = "h0(P1 minus {";
  for (std::size_t i = 0; i < D_places_.size(); ++i) s += (i ? "," : "") + D_places_[i].to_string();
  return s + "})";
}

QuotientGroup H0Functor::build(int d) {
  std::vector<Int> ord{Int(0)};
  for (auto& o : units_.orders(d)) ord.push_back(o);
  std::vector<IntVec> extra;
  if (!D_places_.empty()) {
    IntVec diag{Int(0)};
    for (auto& x : units_.diagonal(d)) diag.push_back(x);
    extra.push_back(diag);
  }
  return QuotientGroup(ord, extra);
}

namespace {
IntVec split_tail(const IntVec& a) { return IntVec(a.begin() + 1, a.end()); }
IntVec join(Int head, const IntVec& tail) {
  IntVec r{std::move(head)};
  r.insert(r.end(), tail.begin(), tail.end());
  return r;
}
}  // namespace

IntVec H0Functor::res(const IntVec& a, int d, int d2) const { return join(a.at(0), units_.res(split_tail(a), d, d2)); }
IntVec H0Functor::tr(const IntVec& a, int d2, int d) const {
  return join(a.at(0) * (d2 / d), units_.tr(split_tail(a), d2, d));
}
IntVec H0Functor::frob(const IntVec& a, int d) const { return join(a.at(0), units_.frob(split_tail(a), d)); }

std::vector<IntVec> H0Functor::cocharacters(int d) const {
  IntVec diag = units_.diagonal(d);
  std::vector<IntVec> r;
  for (std::size_t o = 0; o < diag.size(); ++o) {
    IntVec v(diag.size() + 1, 0);
    v[o + 1] = diag[o];
    r.push_back(v);
  }
  return r;
}

bool H0Functor::in_removed(const std::optional<Elem>& rho) const {
  if (!rho) return units_.has_infinity();
  for (auto& pi : units_.primes())
    if (pi.eval_in(*rho, embedding(pi.field(), rho->field())).is_zero()) return true;
  return false;
}

IntVec H0Functor::point_class(const std::optional<Elem>& rho, int d) const {
  require(!in_removed(rho), ErrorKind::NotRegular, "point lies in the removed set");
  IntVec r{Int(1)};
  FieldRef top = T_->top();
  std::optional<Elem> b;
  if (!base_.is_infinite()) b = T_->embed(base_.eval_poly(Poly::x(P1_->base)));
  for (auto& c : units_.components(d)) {
    if (c.prime < 0) {
      r.push_back(0);
      continue;
    }
    Elem num = rho ? c.root - *rho : top->one();
    Elem den = b ? c.root - *b : top->one();
    if (!rho && !b) num = top->one();
    r.push_back(big(units_.coordinate(num / den, c)));
  }
  return r;
}

std::optional<Elem> H0Functor::value_at(const Function& phi, const Place& v) const {
  if (phi.is_zero()) return T_->top()->zero();
  if (valuation(phi, v) < 0) return std::nullopt;
  return T_->embed(reduce_at(phi, v));
}

bool H0Functor::is_regular(const Section& s, const Place& v) const {
  for (auto& [n, phi] : s.points)
    if (n != 0 && in_removed(value_at(phi, v))) return false;
  return true;
}

IntVec H0Functor::reduce(const Section& s, const Place& v) const {
  require(is_regular(s, v), ErrorKind::NotRegular, s.to_string() + " at " + v.to_string());
  int d = level_of(v);
  IntVec r = zero(d);
  for (auto& [n, phi] : s.points) {
    IntVec c = point_class(value_at(phi, v), d);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += n * c[i];
  }
  return r;
}

std::vector<Place> H0Functor::irregular_places(const Section& s) const {
  std::set<Place> out;
  for (auto& [n, phi] : s.points) {
    if (n == 0) continue;
    for (auto& pi : units_.primes()) {
      Function g = compose(pi, phi);
      require(!g.is_zero(), ErrorKind::ConditionViolated, "section is a point of the removed set");
      for (auto& v : zeros_of(g)) out.insert(v);
    }
    if (units_.has_infinity() && !phi.is_zero())
      for (auto& v : support(phi))
        if (valuation(phi, v) < 0) out.insert(v);
  }
  return {out.begin(), out.end()};
}

Function H0Functor::toric_coordinate(const Section& s, std::size_t prime) const {
  const Poly& pi = units_.primes().at(prime);
  const CurveRef& C = s.curve;
  Elem c = -pi.coeff(0);
  Function u = Function::from_int(C, 1);
  for (auto& [n, phi] : s.points) {
    Function g = Function::constant(C, c) - phi;
    if (!base_.is_infinite()) g = g / Function::constant(C, c - base_.eval_poly(Poly::x(P1_->base)));
    u = u * g.pow(n);
  }
  return u;
}

IntVec H0Functor::local_symbol_toric(const Section& s, const Function& h, const Place& v) const {
  for (auto& pi : units_.primes())
    require(pi.degree() == 1, ErrorKind::Unsupported, "irregular h0 local symbol needs rational removed points");
  int d = level_of(v);
  i64 deg = 0;
  for (auto& [n, phi] : s.points) deg += n;
  IntVec r{Int(static_cast<long>(deg * valuation(h, v)))};
  for (auto& c : units_.components(d)) {
    if (c.prime < 0) {
      r.push_back(0);
      continue;
    }
    Elem t = T_->embed(tame_unit(toric_coordinate(s, static_cast<std::size_t>(c.prime)), h, v));
    r.push_back(big(units_.coordinate(t, c)));
  }
  return r;
}

Section H0Functor::random_section(const CurveRef& C, Rng& rng, int H) const {
  FieldRef k = C->base;
  Section s;
  s.curve = C;
  int count = 1 + static_cast<int>(rng() % 2);
  const i64 mult[] = {1, -1, 2};
  while (static_cast<int>(s.points.size()) < count) {
    i64 n = mult[rng() % 3];
    Function phi;
    if (rng() % 3 == 0) {
      Elem c = k->from_index(rng() % k->order());
      if (in_removed(T_->embed(c))) continue;
      phi = Function::constant(C, c);
    } else {
      phi = random_function(C, rng, std::max(1, std::min(H, 2)));
      if (phi.is_constant()) continue;
    }
    s.points.emplace_back(n, phi);
  }
  return s;
}

Section H0Functor::tautological(const CurveRef& C) const {
  require(C->is_p1(), ErrorKind::UsageError, "the tautological section lives on P1");
  Section s;
  s.curve = C;
  s.points.emplace_back(1, Function::variable(C));
  return s;
}

Int H0Functor::toric_order(int d) const {
  if (D_places_.empty()) return 1;
  Int r = 1;
  for (auto& o : units_.orders(d)) r *= o;
  return r / big(T_->units(d));
}

// ---- literals ----

FunctorRef make_functor(const std::string& literal, FieldRef base) {
  std::string s = trim(literal);
  auto prime_base = [&] {
    require(base->is_prime_field(), ErrorKind::Unsupported, s + " needs a prime base field");
  };
  if (s == "Gm") return std::make_shared<GmFunctor>();
  if (s == "Z") return std::make_shared<ZFunctor>(0);
  if (s.rfind("Z/", 0) == 0) {
    std::string m = trim(s.substr(2));
    require(!m.empty() && std::all_of(m.begin(), m.end(), ::isdigit), ErrorKind::ParseError, "bad modulus in " + s);
    u64 v = std::stoull(m);
    require(v >= 1, ErrorKind::ParseError, "modulus must be positive");
    return std::make_shared<ZFunctor>(v);
  }
  if (s.rfind("Res(", 0) == 0) {
    std::size_t close = s.rfind(')');
    require(close != std::string::npos && trim(s.substr(close + 1)) == "Gm", ErrorKind::ParseError,
            "expected Res(<field>)Gm, got " + s);
    prime_base();
    FieldRef E = parse_field(s.substr(4, close - 4));
    require(E->characteristic() == base->characteristic(), ErrorKind::FieldMismatch, "characteristic mismatch");
    return std::make_shared<ResFunctor>(E);
  }
  if (s.rfind("E/", 0) == 0) {
    prime_base();
    CurveRef E = parse_curve(s);
    require(E->base == base, ErrorKind::FieldMismatch, "curve over " + E->base->to_string());
    return std::make_shared<EllipticFunctor>(E);
  }
  if (s.rfind("h0(", 0) == 0) {
    prime_base();
    require(s.back() == ')', ErrorKind::ParseError, "unterminated h0 literal");
    std::string in = trim(s.substr(3, s.size() - 4));
    require(in.rfind("P1", 0) == 0, ErrorKind::ParseError, "expected h0(P1 minus {...})");
    in = trim(in.substr(2));
    CurveRef P1 = p1_curve(base);
    std::vector<Place> D;
    if (!in.empty()) {
      require(in.rfind("minus", 0) == 0, ErrorKind::ParseError, "expected 'minus' in " + s);
      in = trim(in.substr(5));
      require(in.size() >= 2 && in.front() == '{' && in.back() == '}', ErrorKind::ParseError, "expected {places}");
      in = in.substr(1, in.size() - 2);
      int depth = 0;
      std::string cur;
      for (char ch : in + ",") {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
          if (!trim(cur).empty()) D.push_back(parse_place(trim(cur), P1));
          cur.clear();
        } else {
          cur += ch;
        }
      }
    }
    return std::make_shared<H0Functor>(P1, D);
  }
  fail(ErrorKind::ParseError, "unknown functor literal '" + s + "'");
}

}  // namespace symk
