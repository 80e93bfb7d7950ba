#include "symk/milnor.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "symk/parse.hpp"

namespace symk {

namespace {

template <class T, class Show>
std::string milnor_string(const MilnorElement<T>& x, Show show) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [s, c] : x.terms()) {
    i64 a = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (x.degree() == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << show(s[i]);
    os << "}";
  }
  return os.str();
}

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

SteinbergCertificate search_certificate(FieldRef F) {
  SteinbergCertificate cert;
  u64 q = F->order();
  Int M = Int(q - 1);
  if (q <= 2) return cert;
  const Elem& g = F->primitive();
  constexpr u64 kBudget = 4096;
  Int cur = M;  // gcd so far, equal to sum k_c L_c + (multiple of M)
  std::vector<std::pair<Elem, Int>> comb;
  for (u64 i = 0; i < q && cur != 1; ++i) {
    if (i >= kBudget) {
      cert.theorem_backed = true;
      return cert;
    }
    Elem c = F->from_index(i);
    if (c.is_zero() || c.is_one()) continue;
    Int L = Int(discrete_log(c, g)) * Int(discrete_log(F->one() - c, g));
    L = mod_floor(L, M);
    if (L == 0) continue;
    Int gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cur.get_mpz_t(), L.get_mpz_t());
    if (gg == cur) continue;
    for (auto& kv : comb) kv.second = mod_floor(kv.second * s, M);
    comb.emplace_back(c, mod_floor(t, M));
    cur = gg;
  }
  if (cur != 1) {
    cert.theorem_backed = true;
    return cert;
  }
  std::erase_if(comb, [](const auto& kv) { return kv.second == 0; });
  cert.combination = std::move(comb);
  return cert;
}

const SteinbergCertificate& certificate_for(FieldRef F) {
  static std::mutex mu;
  static std::map<FieldRef, SteinbergCertificate> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(F);
  if (it == cache.end()) it = cache.emplace(F, search_certificate(F)).first;
  return it->second;
}

bool has_unit_entry(const std::vector<Function>& s) {
  return std::any_of(s.begin(), s.end(), [](const Function& f) { return f.is_one(); });
}

std::set<Place> support_set(const Function& f) {
  auto v = support(f);
  return std::set<Place>(v.begin(), v.end());
}

bool disjoint(const std::set<Place>& a, const std::set<Place>& b) {
  for (auto& p : a)
    if (b.count(p)) return false;
  return true;
}

bool first_entries_disjoint(const std::vector<Function>& s, std::size_t r) {
  std::vector<std::set<Place>> sup;
  for (std::size_t i = 0; i < r; ++i) sup.push_back(support_set(s[i]));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!disjoint(sup[i], sup[j])) return false;
  return true;
}

}  // namespace

std::string to_string(const FiniteMilnor& x) {
  return milnor_string(x, [](const Elem& e) { return symk::to_string(e); });
}

std::string to_string(const FunctionMilnor& x) {
  return milnor_string(x, [](const Function& f) { return f.to_string(); });
}

std::string FiniteClass::to_string() const {
  if (degree == 0) return symk::to_string(value);
  if (degree == 1) return symk::to_string(value) + " mod " + symk::to_string(modulus);
  return "0";
}

FiniteClass steinberg_reduce(const FiniteMilnor& x) {
  FiniteClass r;
  r.field = x.context();
  r.degree = x.degree();
  if (r.degree == 0) {
    for (auto& [s, c] : x.terms()) r.value += c;
    return r;
  }
  FieldRef F = r.field;
  require(F != nullptr, ErrorKind::Internal, "finite Milnor element without a field");
  if (r.degree == 1) {
    r.modulus = Int(F->order() - 1);
    const Elem& g = F->primitive();
    for (auto& [s, c] : x.terms()) r.value += Int(c) * Int(discrete_log(s[0], g));
    r.value = mod_floor(r.value, r.modulus);
    return r;
  }
  r.modulus = 1;
  r.value = 0;
  r.certificate = certificate_for(F);
  return r;
}

bool verify_certificate(FieldRef F, const SteinbergCertificate& c) {
  u64 q = F->order();
  if (q <= 2) return true;
  if (c.theorem_backed) return false;
  Int M = Int(q - 1), s = 0;
  const Elem& g = F->primitive();
  for (auto& [e, k] : c.combination) {
    if (e.field() != F || e.is_zero() || e.is_one()) return false;
    s += k * Int(discrete_log(e, g)) * Int(discrete_log(F->one() - e, g));
  }
  return mod_floor(s, M) == 1;
}

FiniteMilnor transfer(const FiniteMilnor& x, FieldRef target) {
  FieldRef F = x.context();
  require(F && target && F->characteristic() == target->characteristic() && F->degree() % target->degree() == 0,
          ErrorKind::NotASubfield, "transfer target is not a subfield");
  int e = F->degree() / target->degree();
  FiniteMilnor r(target, x.degree());
  if (x.degree() == 0) {
    for (auto& [s, c] : x.terms()) r.add(s, c * e);
  } else if (x.degree() == 1) {
    for (auto& [s, c] : x.terms()) r.add({norm(s[0], target)}, c);
  }
  return r;
}

FiniteMilnor tame_symbol(const FunctionMilnor& x, const Place& v, const std::optional<Function>& uniformizer_override) {
  int n = x.degree();
  require(n >= 1, ErrorKind::UsageError, "tame symbol needs degree >= 1");
  FieldRef kv = v.residue_field();
  Function pi = uniformizer_override ? *uniformizer_override : uniformizer(v);
  require(valuation(pi, v) == 1, ErrorKind::UsageError, "not a uniformizer at " + v.to_string());
  FiniteMilnor out(kv, n - 1);
  const Elem minus_one = -kv->one();
  for (auto& [sym, c] : x.terms()) {
    std::size_t k = sym.size();
    std::vector<i64> m(k);
    std::vector<std::optional<Elem>> ubar(k);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < k; ++i) {
      m[i] = valuation(sym[i], v);
      if (m[i] != 0) active.push_back(i);
    }
    auto unit_bar = [&](std::size_t i) -> const Elem& {
      if (!ubar[i]) ubar[i] = reduce_at(m[i] == 0 ? sym[i] : sym[i] / pi.pow(m[i]), v);
      return *ubar[i];
    };
    // {f_1..f_k} = sum over nonempty S of (prod_{i in S} m_i) {x_1..x_k}, x_i = pi on S and u_i off S.
    std::size_t A = active.size();
    for (u64 mask = 1; mask < (u64(1) << A); ++mask) {
      i64 coeff = c;
      std::size_t last = 0;
      std::vector<bool> in(k, false);
      for (std::size_t b = 0; b < A; ++b)
        if (mask >> b & 1) {
          coeff *= m[active[b]];
          in[active[b]] = true;
          last = active[b];
        }
      // {pi, pi} = {pi, -1}: every pi but the last becomes -1; then move pi to the last slot.
      if ((k - 1 - last) % 2) coeff = -coeff;
      std::vector<Elem> entries;
      for (std::size_t i = 0; i < k; ++i) {
        if (i == last) continue;
        entries.push_back(in[i] ? minus_one : unit_bar(i));
      }
      if (std::any_of(entries.begin(), entries.end(), [](const Elem& e) { return e.is_one(); })) continue;
      out.add(std::move(entries), coeff);
    }
  }
  if (n - 1 == 1) {
    // K_1 is multiplicative: collapse to a single symbol.
    Elem prod = kv->one();
    for (auto& [s, c] : out.terms()) prod = prod * pow_signed(s[0], c);
    FiniteMilnor r(kv, 1);
    if (!prod.is_one()) r.add({prod}, 1);
    return r;
  }
  return out;
}

std::vector<Place> milnor_support(const FunctionMilnor& x) {
  const CurveRef& C = x.context();
  std::set<Place> places;
  places.insert(C->is_p1() ? p1_infinity(C) : elliptic_infinity(C));
  std::set<Function> seen;
  for (auto& [s, c] : x.terms())
    for (auto& f : s)
      if (seen.insert(f).second)
        for (auto& p : support(f)) places.insert(p);
  return std::vector<Place>(places.begin(), places.end());
}

ReciprocityResult weil_reciprocity_check(const FunctionMilnor& x) {
  ReciprocityResult r;
  FieldRef k = x.context()->base;
  FiniteMilnor sum(k, x.degree() - 1);
  for (auto& v : milnor_support(x)) {
    FiniteMilnor res = tame_symbol(x, v);
    FiniteMilnor tr = transfer(res, k);
    sum += tr;
    r.table.push_back({v, res, steinberg_reduce(tr)});
  }
  r.total = steinberg_reduce(sum);
  r.ok = r.total.is_zero();
  return r;
}

bool MilnorNormalForm::is_zero() const {
  if (degree == 0) return integer == 0;
  if (degree == 1) return unit && unit->is_one();
  return residues.empty();
}

bool MilnorNormalForm::operator==(const MilnorNormalForm& o) const {
  if (degree != o.degree) return false;
  if (degree == 0) return integer == o.integer;
  if (degree == 1) return unit == o.unit;
  return residues == o.residues;
}

std::string MilnorNormalForm::to_string() const {
  if (degree == 0) return symk::to_string(integer);
  if (degree == 1) return unit ? unit->to_string() : "1";
  if (residues.empty()) return "0";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < residues.size(); ++i)
    os << (i ? ", " : "") << residues[i].first.to_string() << ": " << residues[i].second.to_string();
  os << "}";
  return os.str();
}

MilnorNormalForm normal_form(const FunctionMilnor& x) {
  MilnorNormalForm nf;
  nf.degree = x.degree();
  const CurveRef& C = x.context();
  if (nf.degree == 0) {
    for (auto& [s, c] : x.terms()) nf.integer += c;
    return nf;
  }
  if (nf.degree == 1) {
    Function u = Function::from_int(C, 1);
    for (auto& [s, c] : x.terms()) u = u * s[0].pow(c);
    nf.unit = u;
    return nf;
  }
  nf.exact = C->is_p1();
  for (auto& v : milnor_support(x)) {
    FiniteClass cl = steinberg_reduce(tame_symbol(x, v));
    if (cl.is_zero()) continue;
    (v.is_infinite() ? nf.at_infinity : nf.residues).emplace_back(v, cl);
  }
  return nf;
}

bool milnor_equal(const FunctionMilnor& x, const FunctionMilnor& y) {
  require(x.degree() == y.degree(), ErrorKind::UsageError, "comparing Milnor elements of different degree");
  return normal_form(x - y).is_zero();
}

RewriteResult semilocal_rewrite(const FunctionMilnor& x, const std::vector<Place>& Zin) {
  const CurveRef& C = x.context();
  require(C->is_p1(), ErrorKind::Unsupported, "semilocal rewriting is implemented on P1 only");
  require(x.degree() == 2, ErrorKind::UsageError, "semilocal rewriting needs degree 2");
  std::vector<Place> Z(Zin.begin(), Zin.end());
  std::sort(Z.begin(), Z.end());
  Z.erase(std::unique(Z.begin(), Z.end()), Z.end());
  auto unit_on_Z = [&](const Function& g) {
    return std::all_of(Z.begin(), Z.end(), [&](const Place& p) { return valuation(g, p) == 0; });
  };
  bool done = true;
  for (auto& [s, c] : x.terms())
    if (!unit_on_Z(s[1])) done = false;
  if (done) return {x, 0};

  FieldRef k = C->base;
  bool has_inf = std::any_of(Z.begin(), Z.end(), [](const Place& p) { return p.is_infinite(); });
  Function h = Function::from_int(C, 1);
  if (has_inf) {
    bool found = false;
    for (u64 i = 0; i < k->order() && !found; ++i) {
      Place cand = p1_place(C, Poly::linear(k->from_index(i)));
      if (!std::binary_search(Z.begin(), Z.end(), cand)) {
        h = Function::from_poly(C, cand.pi);
        found = true;
      }
    }
    require(found, ErrorKind::BaseFieldTooSmall, "every rational place lies in Z");
  }
  std::size_t s = Z.size();
  std::vector<Function> pi(s);
  for (std::size_t i = 0; i < s; ++i)
    pi[i] = Z[i].is_infinite() ? h.inverse() : Function::from_poly(C, Z[i].pi) / h.pow(Z[i].degree);

  // Pairs (i, j) whose sum pi_i + pi_j enters the rewrite.
  std::vector<std::vector<bool>> used(s, std::vector<bool>(s, false));
  for (auto& [sym, c] : x.terms()) {
    if (unit_on_Z(sym[1])) continue;
    for (std::size_t i = 0; i < s; ++i) {
      if (valuation(sym[0], Z[i]) == 0) continue;
      for (std::size_t j = 0; j < s; ++j)
        if (i != j && valuation(sym[1], Z[j]) != 0) used[std::min(i, j)][std::max(i, j)] = true;
    }
  }
  // mu with mu_1 = 1 so that mu_i pi_i + mu_j pi_j is a unit at every other place of Z;
  // depth-first over mu_2, mu_3, ... checking each pair once both multipliers are fixed.
  std::vector<Elem> mu(s, k->one());
  if (s >= 3) {
    std::vector<std::vector<Elem>> red(s, std::vector<Elem>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t l = 0; l < s; ++l)
        if (i != l) red[i][l] = reduce_at(pi[i], Z[l]);
    u64 units = k->order() - 1;
    auto pair_ok = [&](std::size_t i, std::size_t j) {
      for (std::size_t l = 0; l < s; ++l) {
        if (l == i || l == j) continue;
        FieldRef kl = Z[l].residue_field();
        Elem a = kl->from_int(static_cast<i64>(mu[i].index())), b = kl->from_int(static_cast<i64>(mu[j].index()));
        if ((a * red[i][l] + b * red[j][l]).is_zero()) return false;
      }
      return true;
    };
    u64 nodes = 0;
    constexpr u64 kBudget = 1000000;
    std::function<bool(std::size_t)> assign = [&](std::size_t j) -> bool {
      if (j == s) return true;
      for (u64 t = 1; t <= units; ++t) {
        require(++nodes <= kBudget, ErrorKind::BaseFieldTooSmall, "unit multiplier search exceeds budget");
        mu[j] = k->from_index(t);
        bool ok = true;
        for (std::size_t i = 0; i < j && ok; ++i)
          if (used[i][j]) ok = pair_ok(i, j);
        if (ok && assign(j + 1)) return true;
      }
      return false;
    };
    require(assign(1), ErrorKind::BaseFieldTooSmall, "no unit multipliers avoid the bad hyperplanes");
  }
  for (std::size_t i = 0; i < s; ++i) pi[i] = pi[i] * Function::constant(C, mu[i]);

  RewriteResult out{FunctionMilnor(C, 2), 0};
  auto emit = [&](const Function& a, const Function& b, i64 c) {
    if (c == 0 || a.is_one() || b.is_one()) return;
    out.value.add({a, b}, c);
  };
  const Function minus_one = Function::from_int(C, -1);
  for (auto& [sym, c] : x.terms()) {
    const Function &f = sym[0], &g = sym[1];
    if (unit_on_Z(g)) {
      emit(f, g, c);
      continue;
    }
    ++out.steps;
    std::vector<i64> m(s), n(s);
    Function uf = f, ug = g;
    for (std::size_t i = 0; i < s; ++i) {
      m[i] = valuation(f, Z[i]);
      n[i] = valuation(g, Z[i]);
      uf = uf / pi[i].pow(m[i]);
      ug = ug / pi[i].pow(n[i]);
    }
    emit(uf, ug, c);
    for (std::size_t j = 0; j < s; ++j) emit(pi[j].inverse(), uf, c * n[j]);  // {u, pi} = {pi^-1, u}
    for (std::size_t i = 0; i < s; ++i) emit(pi[i], ug, c * m[i]);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        i64 e = c * m[i] * n[j];
        if (e == 0) continue;
        if (i == j)
          emit(pi[i], minus_one, e);
        else
          emit(-(pi[i] / pi[j]), pi[i] + pi[j], e);
      }
  }
  return out;
}

bool in_general_position(const FunctionMilnor& x) {
  if (x.degree() <= 2) return true;
  for (auto& [s, c] : x.terms())
    if (!first_entries_disjoint(s, s.size() - 1)) return false;
  return true;
}

RewriteResult general_position(const FunctionMilnor& x) {
  const CurveRef& C = x.context();
  int n = x.degree();
  if (n <= 2) return {x, 0};
  require(C->is_p1(), ErrorKind::Unsupported, "general position rewriting is implemented on P1 only");
  std::size_t r = static_cast<std::size_t>(n - 1);
  RewriteResult out{FunctionMilnor(C, n), 0};
  for (auto& [sym, c] : x.terms()) {
    if (first_entries_disjoint(sym, r)) {
      out.value.add(sym, c);
      continue;
    }
    ++out.steps;
    std::vector<Function> head(sym.begin(), sym.begin() + static_cast<std::ptrdiff_t>(r));
    RewriteResult inner = general_position(FunctionMilnor::symbol(C, head));
    out.steps += inner.steps;
    for (auto& [b, cb] : inner.value.terms()) {
      std::vector<Place> Z;
      for (std::size_t j = 0; j + 1 < r; ++j)
        for (auto& p : support(b[j])) Z.push_back(p);
      RewriteResult two = semilocal_rewrite(FunctionMilnor::symbol(C, {b[r - 1], sym[r]}), Z);
      out.steps += two.steps;
      for (auto& [fu, c2] : two.value.terms()) {
        // {f, u} = {u, f^-1} puts the unit at Z into the r-th slot.
        std::vector<Function> ns(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(r - 1));
        ns.push_back(fu[1]);
        ns.push_back(fu[0].inverse());
        if (has_unit_entry(ns)) continue;
        out.value.add(std::move(ns), c * cb * c2);
      }
    }
  }
  return out;
}

namespace {

template <class T>
MilnorElement<T> parse_milnor_generic(const std::string& s, typename MilnorElement<T>::Context ctx,
                                      const std::function<T(const std::string&)>& entry) {
  detail::ExprParser P(s);
  std::optional<MilnorElement<T>> out;
  auto put = [&](std::vector<T> sym, i64 c) {
    if (!out) out = MilnorElement<T>(ctx, static_cast<int>(sym.size()));
    if (static_cast<int>(sym.size()) != out->degree()) P.error("symbols of different degree");
    out->add(std::move(sym), c);
  };
  bool first = true;
  for (;;) {
    P.skip_ws();
    if (P.eof()) break;
    i64 sign = 1;
    if (P.accept('+')) {
      if (first) P.error("unexpected '+'");
    } else if (P.accept('-')) {
      sign = -1;
    } else if (!first) {
      P.error("expected '+' or '-'");
    }
    first = false;
    P.skip_ws();
    u64 k = 1;
    bool has_num = P.parse_uint(k);
    P.skip_ws();
    if (has_num && !P.accept('*')) {
      if (P.peek('{')) P.error("expected '*'");
      put({}, sign * static_cast<i64>(k));
      continue;
    }
    P.skip_ws();
    P.expect('{');
    std::vector<T> sym;
    std::string cur;
    int depth = 0;
    for (;;) {
      if (P.eof()) P.error("unterminated symbol");
      char ch = P.s_[P.i_++];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == ',' || ch == '}')) {
        std::string t = cur;
        t.erase(0, t.find_first_not_of(" \t"));
        t.erase(t.find_last_not_of(" \t") + 1);
        if (!t.empty()) sym.push_back(entry(t));
        else if (ch == ',' || !sym.empty()) P.error("empty symbol entry");
        cur.clear();
        if (ch == '}') break;
        continue;
      }
      cur += ch;
    }
    put(std::move(sym), sign * static_cast<i64>(k));
  }
  if (!out) P.error("empty Milnor element");
  return *out;
}

}  // namespace

FunctionMilnor parse_milnor(const std::string& s, const CurveRef& C) {
  return parse_milnor_generic<Function>(s, C, [&](const std::string& e) {
    Function f = parse_function(e, C);
    require(!f.is_zero(), ErrorKind::ParseError, "symbol entry is zero: " + e);
    return f;
  });
}

FiniteMilnor parse_finite_milnor(const std::string& s, FieldRef F) {
  return parse_milnor_generic<Elem>(s, F, [&](const std::string& e) {
    Elem a = parse_element(e, F);
    require(!a.is_zero(), ErrorKind::ParseError, "symbol entry is zero: " + e);
    return a;
  });
}

}  // namespace symk
