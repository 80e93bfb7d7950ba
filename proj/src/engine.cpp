#include "symk/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

#include "symk/parse.hpp"

namespace symk {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::K: return "K";
    case Variant::Kprime: return "Kprime";
    case Variant::Ktilde: return "Ktilde";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "K") return Variant::K;
  if (s == "Kprime") return Variant::Kprime;
  if (s == "Ktilde") return Variant::Ktilde;
  fail(ErrorKind::SchemaError, "variant must be K, Kprime or Ktilde, got '" + s + "'");
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> err(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          err[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
}

namespace {

std::vector<FunctorRef> make_all(FieldRef base, const std::vector<std::string>& lits) {
  std::vector<FunctorRef> F;
  for (auto& l : lits) F.push_back(make_functor(l, base));
  return F;
}

// Mixed-radix enumeration of index tuples with the given ranges.
template <class Fn>
void for_tuples(const std::vector<std::size_t>& sizes, Fn fn) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> t(sizes.size(), 0);
  for (;;) {
    fn(t);
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == sizes[i]) t[i++] = 0;
    if (i == t.size()) return;
  }
}

void add_into(IntVec& a, const IntVec& b, i64 m = 1) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) a[i] += m * b[i];
}

bool is_zero_row(const IntVec& r) {
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

Int torsion(const FiniteAbelianGroup& G) {
  Int t = 1;
  for (auto& x : G.invariants())
    if (x != 0) t *= x;
  return t;
}

// b is no larger than a (b a quotient of a gives this).
bool not_larger(const FiniteAbelianGroup& b, const FiniteAbelianGroup& a) {
  if (b.free_rank() != a.free_rank()) return b.free_rank() < a.free_rank();
  return torsion(b) <= torsion(a);
}

}  // namespace

// ---- presentation ----

Presentation::Presentation(FieldRef base, const std::vector<std::string>& functors, int D)
    : Presentation(base, make_all(base, functors), D) {}

Presentation::Presentation(FieldRef base, std::vector<FunctorRef> functors, int D)
    : base_(base), D_(D), F_(std::move(functors)) {
  require(D >= 1, ErrorKind::UsageError, "degree bound D must be positive");
  require(!F_.empty(), ErrorKind::UsageError, "at least one functor is needed");
  std::vector<int> extra;
  for (auto& F : F_) {
    if (F->needs_prime_base())
      require(base->is_prime_field(), ErrorKind::Unsupported, F->name() + " needs a prime base field");
    for (int e : F->extra_degrees()) extra.push_back(e);
  }
  T_ = std::make_shared<const FieldTower>(base, tower_degree(D, extra));
  for (auto& F : F_) F->prepare(T_, D);
  build();
}

void Presentation::build() {
  int n = arity();
  for (int d = 1; d <= D_; ++d) {
    std::vector<std::size_t> sizes;
    for (auto& F : F_) sizes.push_back(F->group(d).orders().size());
    for_tuples(sizes, [&](const std::vector<std::size_t>& t) {
      Int g = 0;
      for (int i = 0; i < n; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), F_[i]->group(d).orders()[t[i]].get_mpz_t());
      if (g == 1) return;
      require(gens_.size() < 20000, ErrorKind::TooLarge, "presentation has too many generators");
      index_[{d, t}] = gens_.size();
      gens_.push_back(Generator{d, t, g});
    });
  }
  std::size_t N = gens_.size();
  auto unit = [&](std::size_t g, const Int& c) {
    IntVec r(N, 0);
    r[g] = c;
    return r;
  };
  for (std::size_t g = 0; g < N; ++g)
    if (gens_[g].order != 0) rows_.push_back(unit(g, gens_[g].order));
  auto basis = [&](int i, int d, std::size_t b) { return F_[i]->group(d).basis_raw(b); };
  // Galois conjugation on T_d
  for (std::size_t g = 0; g < N; ++g) {
    const Generator& G = gens_[g];
    if (G.d == 1) continue;
    std::vector<IntVec> raw;
    for (int i = 0; i < n; ++i) raw.push_back(F_[i]->frob(basis(i, G.d, G.basis[i]), G.d));
    IntVec r = expand(G.d, raw);
    r[g] -= 1;
    if (!is_zero_row(r)) rows_.push_back(r);
  }
  // projection formula for T_d -> T_d2
  for (int d = 1; d <= D_; ++d)
    for (int d2 = 2 * d; d2 <= D_; d2 += d)
      for (int i = 0; i < n; ++i) {
        std::vector<std::size_t> sizes;
        for (int j = 0; j < n; ++j) sizes.push_back(F_[j]->group(j == i ? d2 : d).orders().size());
        for_tuples(sizes, [&](const std::vector<std::size_t>& t) {
          std::vector<IntVec> low, high;
          for (int j = 0; j < n; ++j) {
            if (j == i) {
              IntVec b = basis(j, d2, t[j]);
              low.push_back(F_[j]->tr(b, d2, d));
              high.push_back(b);
            } else {
              IntVec a = basis(j, d, t[j]);
              low.push_back(a);
              high.push_back(F_[j]->res(a, d, d2));
            }
          }
          IntVec r = expand(d, low);
          add_into(r, expand(d2, high), -1);
          if (!is_zero_row(r)) rows_.push_back(r);
        });
      }
}

IntVec Presentation::expand(int d, const std::vector<IntVec>& raw) const {
  int n = arity();
  require(static_cast<int>(raw.size()) == n, ErrorKind::Internal, "expand arity");
  std::vector<IntVec> c;
  std::vector<std::size_t> sizes;
  for (int i = 0; i < n; ++i) {
    c.push_back(F_[i]->coords(raw[i], d));
    sizes.push_back(c.back().size());
  }
  IntVec r(gens_.size(), 0);
  for_tuples(sizes, [&](const std::vector<std::size_t>& t) {
    Int v = 1;
    for (int i = 0; i < n && v != 0; ++i) v *= c[i][t[i]];
    if (v == 0) return;
    auto it = index_.find({d, t});
    if (it == index_.end()) return;  // gcd 1: the tensor vanishes
    const Int& o = gens_[it->second].order;
    Int& x = r[it->second];
    x += v;
    if (o != 0) x %= o;
  });
  return r;
}

FiniteAbelianGroup Presentation::quotient() const {
  Lattice L(gens_.size());
  for (auto& r : rows_) L.add(r);
  return L.quotient();
}

std::string Presentation::generator_string(std::size_t g) const {
  const Generator& G = gens_.at(g);
  std::string s = "T" + std::to_string(G.d) + ":";
  for (int i = 0; i < arity(); ++i)
    s += (i ? " (x) " : " ") + F_[i]->value_string(F_[i]->group(G.d).basis_raw(G.basis[i]), G.d);
  return s;
}

// ---- harvesters ----

IntVec harvest_somekawa(const Presentation& P, const SomekawaDatum& x) {
  int n = P.arity();
  require(static_cast<int>(x.g.size()) == n, ErrorKind::UsageError, "one section per functor is needed");
  require(!x.h.is_zero(), ErrorKind::ZeroFunction, "h must be nonzero");
  std::set<Place> S;
  for (auto& v : support(x.h)) S.insert(v);
  for (int i = 0; i < n; ++i)
    for (auto& v : P.functor(i)->irregular_places(x.g[i])) S.insert(v);
  IntVec row = P.zero_row();
  for (auto& c : S) {
    if (c.degree > P.D()) fail(ErrorKind::DegreeOverflow, "place " + c.to_string() + " beyond the degree bound");
    std::vector<int> bad;
    for (int i = 0; i < n; ++i)
      if (!P.functor(i)->is_regular(x.g[i], c)) bad.push_back(i);
    if (bad.size() > 1) fail(ErrorKind::ConditionViolated, "two irregular sections at " + c.to_string());
    int vh = valuation(x.h, c);
    if (bad.empty() && vh == 0) continue;
    int ic = bad.empty() ? 0 : bad[0];
    std::vector<IntVec> raw;
    for (int j = 0; j < n; ++j)
      raw.push_back(j == ic ? P.functor(j)->local_symbol(x.g[j], x.h, c) : P.functor(j)->reduce(x.g[j], c));
    add_into(row, P.expand(c.degree, raw));
  }
  return row;
}

IntVec harvest_geometric(const Presentation& P, const GeometricDatum& x) {
  int n = P.arity();
  require(static_cast<int>(x.g.size()) == n, ErrorKind::UsageError, "one section per functor is needed");
  require(!x.f.is_zero() && !x.f.is_constant(), ErrorKind::UsageError, "the cover must be nonconstant");
  const CurveRef& C = x.f.curve();
  Function f1 = x.f - Function::from_int(C, 1);
  std::vector<Place> Z = zeros_of(f1);
  for (int i = 0; i < n; ++i)
    for (auto& v : P.functor(i)->irregular_places(x.g[i]))
      if (!std::binary_search(Z.begin(), Z.end(), v))
        fail(ErrorKind::NotRegularOnCPrime, "section " + std::to_string(i + 1) + " is irregular at " + v.to_string());
  IntVec row = P.zero_row();
  Divisor div = divisor(x.f);
  for (auto& [c, m] : div.terms()) {
    if (c.degree > P.D()) fail(ErrorKind::DegreeOverflow, "place " + c.to_string() + " beyond the degree bound");
    std::vector<IntVec> raw;
    for (int i = 0; i < n; ++i) {
      if (!P.functor(i)->is_regular(x.g[i], c))
        fail(ErrorKind::NotRegularOnCPrime, "section " + std::to_string(i + 1) + " is irregular at " + c.to_string());
      raw.push_back(P.functor(i)->reduce(x.g[i], c));
    }
    add_into(row, P.expand(c.degree, raw), m);
  }
  return row;
}

IntVec harvest_steinberg(const Presentation& P, const SteinbergDatum& x) {
  int n = P.arity();
  require(0 <= x.i && x.i < x.j && x.j < n, ErrorKind::UsageError, "Steinberg slots need i < j");
  FieldRef top = P.tower().top();
  require(!x.a.is_zero() && !x.a.is_one(), ErrorKind::UsageError, "Steinberg element must avoid 0 and 1");
  std::vector<IntVec> raw;
  std::size_t f = 0;
  for (int k = 0; k < n; ++k) {
    if (k == x.i)
      raw.push_back(P.functor(k)->apply_cocharacter(x.chi_i, x.a, x.d));
    else if (k == x.j)
      raw.push_back(P.functor(k)->apply_cocharacter(x.chi_j, top->one() - x.a, x.d));
    else
      raw.push_back(x.fillers.at(f++));
  }
  return P.expand(x.d, raw);
}

std::vector<SteinbergDatum> steinberg_data(const Presentation& P) {
  std::vector<SteinbergDatum> out;
  int n = P.arity();
  const FieldTower& T = P.tower();
  for (int d = 1; d <= P.D(); ++d) {
    Elem g = T.gamma(d);
    std::vector<Elem> as;
    Elem a = g;
    for (u64 k = 1; k < T.units(d); ++k, a = a * g) as.push_back(a);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto ci = P.functor(i)->cocharacters(d), cj = P.functor(j)->cocharacters(d);
        std::vector<std::size_t> sizes;
        std::vector<int> slots;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) {
            slots.push_back(k);
            sizes.push_back(P.functor(k)->group(d).orders().size());
          }
        for (auto& x : as)
          for (auto& chi : ci)
            for (auto& chj : cj)
              for_tuples(sizes, [&](const std::vector<std::size_t>& t) {
                SteinbergDatum s{d, x, i, j, chi, chj, {}};
                for (std::size_t m = 0; m < slots.size(); ++m)
                  s.fillers.push_back(P.functor(slots[m])->group(d).basis_raw(t[m]));
                out.push_back(std::move(s));
                require(out.size() <= 500000, ErrorKind::TooLarge, "too many Steinberg relations");
              });
      }
  }
  return out;
}

// ---- samplers ----

namespace {

Poly random_monic_irreducible(FieldRef k, Rng& rng, int e) {
  for (;;) {
    Poly p = random_poly(k, rng, e).monic();
    if (is_irreducible(p)) return p;
  }
}

Rng sample_rng(u64 seed, std::size_t k, u64 salt) { return Rng(splitmix64(seed ^ splitmix64(k * 2 + salt))); }

void note(SampleStats* st, const Error& e) {
  if (!st) return;
  st->reasons[error_kind_name(e.kind())]++;
}

}  // namespace

Function cover_through(const CurveRef& C, const std::vector<Place>& S, Rng& rng, int H, int D) {
  FieldRef k = C->base;
  Poly Pi = Poly::constant(k->one());
  bool at_inf = false;
  std::set<Poly> seen;
  for (auto& v : S) {
    if (v.is_infinite()) {
      at_inf = true;
      continue;
    }
    if (seen.insert(v.pi).second) Pi = Pi * v.pi;
  }
  int need = Pi.degree() + (at_inf ? 1 : 0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    int m = std::max(1, need + static_cast<int>(rng() % static_cast<u64>(std::max(1, H))));
    Poly B = Poly::constant(k->one());
    for (int tries = 0; B.degree() < m && tries < 32; ++tries) {
      int e = 1 + static_cast<int>(rng() % static_cast<u64>(std::min(D, m - B.degree())));
      Poly r = random_monic_irreducible(k, rng, e);
      if (gcd(r, Pi).degree() == 0) B = B * r;  // B must be a unit at every place of S
    }
    int wmax = m - Pi.degree() - (at_inf ? 1 : 0);
    if (B.degree() < m || wmax < 0) continue;
    Poly w = random_poly(k, rng, static_cast<int>(rng() % static_cast<u64>(wmax + 1)));
    Poly A = B + w * Pi;
    if (A.is_zero()) continue;
    Function f = Function::make(C, A, Poly(k), B);  // a function of x alone on an elliptic curve
    if (f.is_constant()) continue;
    bool ok = true;
    Divisor div = divisor(f);
    for (auto& [c, mult] : div.terms()) ok = ok && c.degree <= D;
    if (ok) return f;
  }
  fail(ErrorKind::DegreeOverflow, "no cover with small fibres found");
}

std::optional<Sampled<SomekawaDatum>> sample_somekawa(const Presentation& P, const std::vector<CurveRef>& curves,
                                                      int H, u64 seed, std::size_t k, SampleStats* st) {
  if (curves.empty()) return std::nullopt;
  Rng rng = sample_rng(seed, k, 0);
  std::optional<Sampled<SomekawaDatum>> zero;
  for (int attempt = 0; attempt < kSampleAttempts; ++attempt) {
    SomekawaDatum x;
    x.C = curves[rng() % curves.size()];
    x.h = random_function(x.C, rng, H);
    for (auto& F : P.functors()) x.g.push_back(F->random_section(x.C, rng, H));
    if (x.h.is_constant()) continue;
    try {
      IntVec row = harvest_somekawa(P, x);
      if (!is_zero_row(row)) {
        if (st) st->accepted++;
        return Sampled<SomekawaDatum>{std::move(x), std::move(row)};
      }
      if (!zero) zero = Sampled<SomekawaDatum>{std::move(x), std::move(row)};
    } catch (const Error& e) {
      note(st, e);
    }
  }
  if (st) (zero ? st->zero : st->rejected)++;
  return zero;
}

std::optional<Sampled<GeometricDatum>> sample_geometric(const Presentation& P, const std::vector<CurveRef>& curves,
                                                        int H, u64 seed, std::size_t k, SampleStats* st) {
  if (curves.empty()) return std::nullopt;
  Rng rng = sample_rng(seed, k, 1);
  std::optional<Sampled<GeometricDatum>> zero;
  for (int attempt = 0; attempt < kSampleAttempts; ++attempt) {
    GeometricDatum x;
    CurveRef C = curves[rng() % curves.size()];
    for (auto& F : P.functors()) x.g.push_back(F->random_section(C, rng, H));
    try {
      std::set<Place> S;
      for (int i = 0; i < P.arity(); ++i)
        for (auto& v : P.functor(i)->irregular_places(x.g[i])) S.insert(v);
      for (auto& v : S) require(v.degree <= P.D(), ErrorKind::DegreeOverflow, "irregular place beyond D");
      x.f = cover_through(C, {S.begin(), S.end()}, rng, H, P.D());
      IntVec row = harvest_geometric(P, x);
      if (!is_zero_row(row)) {
        if (st) st->accepted++;
        return Sampled<GeometricDatum>{std::move(x), std::move(row)};
      }
      if (!zero) zero = Sampled<GeometricDatum>{std::move(x), std::move(row)};
    } catch (const Error& e) {
      note(st, e);
    }
  }
  if (st) (zero ? st->zero : st->rejected)++;
  return zero;
}

std::vector<CurveRef> problem_curves(const Problem& p) {
  std::vector<CurveRef> out;
  if (!p.base->is_prime_field()) {
    require(p.curves.empty(), ErrorKind::Unsupported, "curves need a prime base field");
    return out;
  }
  if (p.curves.empty()) return {p1_curve(p.base)};
  for (auto& s : p.curves) {
    CurveRef C = parse_curve(s);
    require(C->base == p.base, ErrorKind::FieldMismatch, "curve " + s + " is not over " + p.base->to_string());
    out.push_back(C);
  }
  return out;
}

namespace {
void merge(SampleStats& into, const SampleStats& s) {
  into.accepted += s.accepted;
  into.zero += s.zero;
  into.rejected += s.rejected;
  for (auto& [k, v] : s.reasons) into.reasons[k] += v;
}
}  // namespace

HarvestedRows harvest_all(const Presentation& P, const Problem& p, int threads) {
  HarvestedRows out;
  auto st = steinberg_data(P);
  out.steinberg.resize(st.size());
  parallel_for(st.size(), threads, [&](std::size_t i) { out.steinberg[i] = harvest_steinberg(P, st[i]); });

  std::vector<CurveRef> curves = problem_curves(p);
  std::size_t ns = curves.empty() ? 0 : static_cast<std::size_t>(std::max(0, p.budget.samples));
  std::vector<std::optional<IntVec>> som(ns), geo(ns);
  std::vector<SampleStats> ss(ns), gs(ns);
  parallel_for(ns, threads, [&](std::size_t k) {
    if (auto r = sample_somekawa(P, curves, p.budget.H, p.budget.seed, k, &ss[k])) som[k] = std::move(r->row);
  });
  parallel_for(ns, threads, [&](std::size_t k) {
    if (auto r = sample_geometric(P, curves, p.budget.H, p.budget.seed, k, &gs[k])) geo[k] = std::move(r->row);
  });
  for (std::size_t k = 0; k < ns; ++k) {
    merge(out.somekawa_stats, ss[k]);
    merge(out.geometric_stats, gs[k]);
    if (som[k]) out.somekawa.push_back(std::move(*som[k]));
    if (geo[k]) out.geometric.push_back(std::move(*geo[k]));
  }
  return out;
}

// ---- groups ----

KGroupResult compute_kgroup(const Problem& p, int threads) {
  require(p.budget.steps >= 1, ErrorKind::UsageError, "budget steps must be positive");
  Presentation P(p.base, p.functors, p.budget.D);
  HarvestedRows R = harvest_all(P, p, threads);
  KGroupResult res;
  res.problem = p;
  res.variant = p.variant;
  res.generators = P.size();
  res.presentation_rows = P.rows().size();
  res.steinberg_rows = R.steinberg.size();
  res.somekawa_rows = R.somekawa.size();
  res.geometric_rows = R.geometric.size();
  res.somekawa_stats = R.somekawa_stats;
  res.geometric_stats = R.geometric_stats;

  Lattice base(P.size());
  for (auto& r : P.rows()) base.add(r);
  res.mackey = base.quotient();
  Lattice Lt = base, Lk = base, Lkp = base, Ls = base, Lg = base;
  int S = p.budget.steps;
  auto prefix = [&](std::size_t len, int s) { return (len * static_cast<std::size_t>(s) + S - 1) / S; };
  std::size_t st0 = 0, so0 = 0, ge0 = 0;
  for (int s = 1; s <= S; ++s) {
    std::size_t st1 = prefix(R.steinberg.size(), s), so1 = prefix(R.somekawa.size(), s),
                ge1 = prefix(R.geometric.size(), s);
    for (std::size_t i = st0; i < st1; ++i) {
      Lt.add(R.steinberg[i]);
      Lk.add(R.steinberg[i]);
      Lkp.add(R.steinberg[i]);
    }
    for (std::size_t i = so0; i < so1; ++i) {
      Lk.add(R.somekawa[i]);
      Lkp.add(R.somekawa[i]);
      Ls.add(R.somekawa[i]);
    }
    for (std::size_t i = ge0; i < ge1; ++i) {
      Lkp.add(R.geometric[i]);
      Lg.add(R.geometric[i]);
    }
    st0 = st1, so0 = so1, ge0 = ge1;
    StepRecord rec;
    rec.step = s;
    rec.steinberg_rows = st1;
    rec.somekawa_rows = so1;
    rec.geometric_rows = ge1;
    rec.Ktilde = Lt.quotient();
    rec.K = Lk.quotient();
    rec.Kprime = Lkp.quotient();
    rec.K_pure = Ls.quotient();
    rec.Kprime_pure = Lg.quotient();
    bool ok = not_larger(rec.K, rec.Ktilde) && not_larger(rec.Kprime, rec.K);
    if (!res.trace.empty()) {
      const StepRecord& prev = res.trace.back();
      ok = ok && not_larger(rec.Ktilde, prev.Ktilde) && not_larger(rec.K, prev.K) &&
           not_larger(rec.Kprime, prev.Kprime) && not_larger(rec.K_pure, prev.K_pure) &&
           not_larger(rec.Kprime_pure, prev.Kprime_pure);
    }
    res.monotone = res.monotone && ok;
    res.trace.push_back(rec);
  }
  const StepRecord& last = res.trace.back();
  switch (p.variant) {
    case Variant::Ktilde: res.group = last.Ktilde; break;
    case Variant::K: res.group = last.K_pure; break;
    case Variant::Kprime: res.group = last.Kprime_pure; break;
  }
  res.certificates.push_back("mackey " + res.mackey.to_string() + " on " + std::to_string(P.size()) +
                             " generators and " + std::to_string(P.rows().size()) + " rows");
  res.certificates.push_back("steinberg rows " + std::to_string(R.steinberg.size()));
  res.certificates.push_back("somekawa rows " + std::to_string(R.somekawa.size()) + " of " +
                             std::to_string(p.budget.samples) + " samples");
  res.certificates.push_back("geometric rows " + std::to_string(R.geometric.size()) + " of " +
                             std::to_string(p.budget.samples) + " samples");
  return res;
}

ProjectionIsoResult check_projection_formula_iso(FieldRef k, const std::vector<std::string>& left_functors,
                                                 FieldRef E, const std::vector<std::string>& right_functors,
                                                 int D_left, int D_right, int threads) {
  Problem L, R;
  L.base = k;
  L.functors = left_functors;
  L.variant = Variant::Ktilde;
  L.budget.D = D_left;
  L.budget.samples = 0;
  L.budget.steps = 1;
  R = L;
  R.base = E;
  R.functors = right_functors;
  R.budget.D = D_right;
  ProjectionIsoResult out;
  out.left = compute_kgroup(L, threads).group;
  out.right = compute_kgroup(R, threads).group;
  out.equal = out.left == out.right;
  return out;
}

}  // namespace symk
