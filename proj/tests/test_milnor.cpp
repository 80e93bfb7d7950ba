#include <gtest/gtest.h>

#include <random>
#include <set>

#include "symk/milnor.hpp"
#include "symk/parse.hpp"

using namespace symk;

namespace {

CurveRef P1(u64 p) { return p1_curve(GF::prime(p)); }
CurveRef E5() { return parse_curve("E/GF(5): y^2 = x^3 + x + 1"); }

Poly random_poly(FieldRef k, std::mt19937_64& rng, int deg) {
  std::vector<Elem> c;
  for (int i = 0; i <= deg; ++i) c.push_back(k->from_index(rng() % k->order()));
  if (c.back().is_zero()) c.back() = k->one();
  return Poly(k, c);
}

Function random_fn(const CurveRef& C, std::mt19937_64& rng, int maxdeg) {
  FieldRef k = C->base;
  for (;;) {
    Poly a = random_poly(k, rng, rng() % (maxdeg + 1)), d = random_poly(k, rng, rng() % (maxdeg + 1));
    Poly b(k);
    if (!C->is_p1() && rng() % 2) b = random_poly(k, rng, rng() % 2);
    Function f = Function::make(C, a, b, d);
    if (!f.is_zero()) return f;
  }
}

FunctionMilnor sym(const CurveRef& C, std::vector<Function> e, i64 c = 1) {
  return FunctionMilnor::symbol(C, std::move(e), c);
}

}  // namespace

TEST(Milnor, SteinbergReduceExamples) {
  FieldRef F5 = GF::prime(5);
  FiniteClass z = steinberg_reduce(parse_finite_milnor("{2,3}", F5));
  EXPECT_TRUE(z.is_zero());
  ASSERT_TRUE(z.certificate.has_value());
  EXPECT_TRUE(verify_certificate(F5, *z.certificate));
  EXPECT_EQ(steinberg_reduce(parse_finite_milnor("{4}", F5)).value, 2);
  EXPECT_EQ(steinberg_reduce(FiniteMilnor::integer(F5, 7)).value, 7);
  for (u64 q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 49u, 121u}) {
    u64 p = 2;
    while (q % p) ++p;
    int n = 0;
    for (u64 t = q; t > 1; t /= p) ++n;
    FieldRef F = GF::standard(p, n);
    FiniteClass c = steinberg_reduce(FiniteMilnor::symbol(F, {F->primitive(), F->primitive()}));
    ASSERT_TRUE(c.certificate.has_value());
    EXPECT_TRUE(verify_certificate(F, *c.certificate)) << q;
  }
}

TEST(Milnor, TameSymbolExamples) {
  CurveRef C = P1(5);
  FunctionMilnor x = parse_milnor("{t, t-1}", C);
  EXPECT_EQ(to_string(tame_symbol(x, parse_place("(t)", C))), "{4}");
  EXPECT_EQ(to_string(tame_symbol(x, parse_place("inf", C))), "{4}");
  EXPECT_TRUE(tame_symbol(parse_milnor("{t+2, t+3}", C), parse_place("(t)", C)).empty());
  // degree 1: the residue is the valuation
  EXPECT_EQ(steinberg_reduce(tame_symbol(parse_milnor("{t^3/(t+1)}", C), parse_place("(t)", C))).value, 3);
  // {pi, pi} = {pi, -1}
  EXPECT_EQ(to_string(tame_symbol(parse_milnor("{t, t}", C), parse_place("(t)", C))), "{4}");
}

TEST(Milnor, ReciprocityExamples) {
  CurveRef C = P1(5);
  ReciprocityResult r = weil_reciprocity_check(parse_milnor("{t, t-1}", C));
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.table.size(), 3u);
  std::vector<std::string> shown;
  for (auto& e : r.table) shown.push_back(e.place.to_string() + "=" + to_string(e.residue));
  EXPECT_EQ(shown, (std::vector<std::string>{"(t)={4}", "(t+4)=0", "inf={4}"}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Function f = random_fn(C, rng, 4);
    ReciprocityResult s = weil_reciprocity_check(sym(C, {f, -f}));
    EXPECT_TRUE(s.ok);
    for (auto& e : s.table) EXPECT_TRUE(steinberg_reduce(e.residue).is_zero());
  }
}

TEST(Milnor, ReciprocityRandomP1) {
  std::mt19937_64 rng(11);
  for (u64 p : {5u, 7u}) {
    CurveRef C = P1(p);
    for (int i = 0; i < 300; ++i) {
      FunctionMilnor x = sym(C, {random_fn(C, rng, 6), random_fn(C, rng, 6)});
      EXPECT_TRUE(weil_reciprocity_check(x).ok) << to_string(x);
    }
    for (int i = 0; i < 50; ++i) {
      FunctionMilnor x = sym(C, {random_fn(C, rng, 3), random_fn(C, rng, 3), random_fn(C, rng, 3)});
      EXPECT_TRUE(weil_reciprocity_check(x).ok);
      EXPECT_TRUE(weil_reciprocity_check(sym(C, {random_fn(C, rng, 5)})).ok);
    }
  }
}

TEST(Milnor, ReciprocityElliptic) {
  CurveRef E = E5();
  FieldRef k = E->base;
  std::mt19937_64 rng(17);
  int disjoint = 0;
  for (int i = 0; i < 200; ++i) {
    Function f = random_fn(E, rng, 2), g = random_fn(E, rng, 2);
    EXPECT_TRUE(weil_reciprocity_check(sym(E, {f, g})).ok);
    // f(div g) = g(div f) when the supports are disjoint
    Divisor Df = divisor(f), Dg = divisor(g);
    bool overlap = false;
    for (auto& [P, m] : Df.terms())
      if (Dg.multiplicity(P)) overlap = true;
    if (overlap) continue;
    ++disjoint;
    auto eval = [&](const Function& h, const Divisor& D) {
      Elem r = k->one();
      for (auto& [P, m] : D.terms()) r = r * pow_signed(norm(reduce_at(h, P), k), m);
      return r;
    };
    EXPECT_EQ(eval(f, Dg), eval(g, Df));
  }
  EXPECT_GT(disjoint, 20);
}

TEST(Milnor, UniformizerIndependence) {
  std::mt19937_64 rng(23);
  std::vector<CurveRef> curves = {P1(5), P1(7), E5()};
  int checked = 0;
  for (int i = 0; i < 800; ++i) {
    CurveRef C = curves[i % 3];
    FunctionMilnor x = sym(C, {random_fn(C, rng, 3), random_fn(C, rng, 3)});
    auto places = milnor_support(x);
    const Place& v = places[rng() % places.size()];
    Function pi = uniformizer(v);
    Function u = random_fn(C, rng, 2);
    if (valuation(u, v) != 0) continue;
    Function pi2 = pi * u;
    ++checked;
    EXPECT_EQ(steinberg_reduce(tame_symbol(x, v)), steinberg_reduce(tame_symbol(x, v, pi2)));
  }
  EXPECT_GE(checked, 500);
}

TEST(Milnor, TameSymbolAxioms) {
  std::mt19937_64 rng(29);
  CurveRef C = P1(7);
  for (int i = 0; i < 200; ++i) {
    Function f = random_fn(C, rng, 3), g = random_fn(C, rng, 3), h = random_fn(C, rng, 3);
    auto places = milnor_support(sym(C, {f, g, h}));
    const Place& v = places[rng() % places.size()];
    // additivity in each slot
    FiniteClass lhs = steinberg_reduce(tame_symbol(sym(C, {f * g, h}), v));
    FiniteClass rhs = steinberg_reduce(tame_symbol(sym(C, {f, h}) + sym(C, {g, h}), v));
    EXPECT_EQ(lhs, rhs);
    // d{pi, u} for a unit u is the residue of u up to the sign convention
    Function pi = uniformizer(v);
    if (valuation(g, v) == 0) {
      FiniteClass a = steinberg_reduce(tame_symbol(sym(C, {g, pi}), v));
      FieldRef kv = v.residue_field();
      EXPECT_EQ(a, steinberg_reduce(FiniteMilnor::symbol(kv, {reduce_at(g, v)})));
      if (valuation(h, v) == 0) EXPECT_TRUE(tame_symbol(sym(C, {g, h}), v).empty());
    }
  }
}

TEST(Milnor, TransferExamples) {
  FieldRef F9 = parse_field("GF(9,x^2+1)"), F3 = GF::prime(3);
  FiniteMilnor x = FiniteMilnor::symbol(F9, {parse_element("x+1", F9)});
  EXPECT_EQ(to_string(transfer(x, F3)), "{2}");
  EXPECT_EQ(transfer(x, F9), x);
  EXPECT_TRUE(transfer(FiniteMilnor::symbol(F9, {F9->gen(), F9->gen()}), F3).empty());
  EXPECT_EQ(steinberg_reduce(transfer(FiniteMilnor::integer(F9, 3), F3)).value, 6);
  EXPECT_THROW(transfer(x, GF::prime(5)), Error);
  EXPECT_THROW(transfer(FiniteMilnor::symbol(F3, {F3->one()}), F9), Error);
}

TEST(Milnor, NormalFormExamples) {
  CurveRef C = P1(5);
  MilnorNormalForm nf = normal_form(parse_milnor("{t, t-1}", C));
  EXPECT_FALSE(nf.is_zero());
  EXPECT_EQ(nf.to_string(), "{(t): 2 mod 4}");
  EXPECT_TRUE(normal_form(parse_milnor("{t^2+2, -t^2-1}", C)).is_zero());
  EXPECT_TRUE(normal_form(parse_milnor("{t, t, t-1} + 3*{t+1, t^2+2, t}", C)).is_zero());
  EXPECT_EQ(normal_form(parse_milnor("3*{t} - {t^2}", C)).to_string(), "t");
  EXPECT_EQ(normal_form(parse_milnor("7", C)).integer, 7);
  EXPECT_FALSE(normal_form(parse_milnor("{x, y}", E5())).exact);
}

TEST(Milnor, SteinbergVanishing) {
  std::mt19937_64 rng(31);
  CurveRef C = P1(5);
  for (int i = 0; i < 300; ++i) {
    Function f = random_fn(C, rng, 4);
    if (f.is_one()) continue;
    Function one = Function::from_int(C, 1);
    EXPECT_TRUE(normal_form(sym(C, {f, one - f})).is_zero());
    Function g = random_fn(C, rng, 2);
    EXPECT_TRUE(normal_form(sym(C, {f, one - f, g})).is_zero());
  }
}

TEST(Milnor, OracleDetectsDifferences) {
  CurveRef C = P1(7);
  std::mt19937_64 rng(37);
  int nonzero = 0;
  for (int i = 0; i < 200; ++i) {
    Function f = random_fn(C, rng, 3), g = random_fn(C, rng, 3);
    FunctionMilnor x = sym(C, {f, g});
    EXPECT_TRUE(milnor_equal(x, sym(C, {g, f}, -1)));
    EXPECT_TRUE(milnor_equal(x + x, sym(C, {f * f, g})));
    if (!normal_form(x).is_zero()) ++nonzero;
  }
  EXPECT_GT(nonzero, 100);
}

TEST(Milnor, SemilocalExamples) {
  CurveRef C = P1(5);
  std::vector<Place> Z = {parse_place("(t)", C), parse_place("(t-1)", C)};
  RewriteResult r = semilocal_rewrite(parse_milnor("{t, t-1}", C), Z);
  EXPECT_EQ(r.value, parse_milnor("{-t/(t-1), 2t-1}", C));
  FunctionMilnor u = parse_milnor("{t+2, t+3}", C);
  RewriteResult r2 = semilocal_rewrite(u, Z);
  EXPECT_EQ(r2.value, u);
  EXPECT_EQ(r2.steps, 0);
  RewriteResult r3 = semilocal_rewrite(parse_milnor("{t, t}", C), {parse_place("(t)", C)});
  EXPECT_EQ(r3.value, parse_milnor("{t, -1}", C));
  EXPECT_TRUE(milnor_equal(r3.value, parse_milnor("{t, t}", C)));
}

TEST(Milnor, SemilocalRandom) {
  std::mt19937_64 rng(41);
  for (u64 p : {7u, 11u}) {
    CurveRef C = P1(p);
    for (int i = 0; i < 60; ++i) {
      FunctionMilnor x = sym(C, {random_fn(C, rng, 3), random_fn(C, rng, 3)}) +
                         sym(C, {random_fn(C, rng, 2), random_fn(C, rng, 2)}, 2);
      auto places = milnor_support(x);
      std::vector<Place> Z;
      for (auto& v : places)
        if (rng() % 2) Z.push_back(v);
      RewriteResult r = semilocal_rewrite(x, Z);
      EXPECT_TRUE(milnor_equal(r.value, x)) << to_string(x);
      for (auto& [s, c] : r.value.terms())
        for (auto& v : Z) EXPECT_EQ(valuation(s[1], v), 0);
    }
  }
}

TEST(Milnor, GeneralPositionExamples) {
  CurveRef C = P1(7);
  FunctionMilnor two = parse_milnor("{t, t}", C);
  EXPECT_EQ(general_position(two).value, two);
  FunctionMilnor x = parse_milnor("{t, t, t-1}", C);
  RewriteResult r = general_position(x);
  EXPECT_TRUE(in_general_position(r.value));
  EXPECT_GT(r.steps, 0);
  EXPECT_TRUE(milnor_equal(r.value, x));
  FunctionMilnor g = parse_milnor("{t, (t-1)/(t-2), t}", C);
  RewriteResult rg = general_position(g);
  EXPECT_EQ(rg.steps, 0);
  EXPECT_EQ(rg.value, g);
}

TEST(Milnor, GeneralPositionRandom) {
  std::mt19937_64 rng(43);
  CurveRef C = P1(11);
  for (int i = 0; i < 40; ++i) {
    FunctionMilnor x = sym(C, {random_fn(C, rng, 2), random_fn(C, rng, 2), random_fn(C, rng, 2)});
    RewriteResult r = general_position(x);
    EXPECT_TRUE(in_general_position(r.value));
    EXPECT_TRUE(milnor_equal(r.value, x));
  }
}

TEST(Milnor, CoverCompatibility) {
  // s-line over the t-line via t = s^2; N{a(s^2), b} = {a, N b} and residues commute with norms.
  std::mt19937_64 rng(47);
  for (u64 p : {5u, 7u}) {
    CurveRef Ct = P1(p), Cs = P1(p);
    FieldRef k = Ct->base;
    auto pull = [&](const Poly& a) {
      std::vector<Elem> c(2 * std::max(a.degree(), 0) + 1, k->zero());
      for (int i = 0; i <= a.degree(); ++i) c[2 * i] = a.coeff(i);
      return Poly(k, c);
    };
    auto neg_s = [&](const Poly& a) {
      std::vector<Elem> c = a.coeffs();
      for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
      return Poly(k, c);
    };
    auto even_to_t = [&](const Poly& a) {
      std::vector<Elem> c;
      for (int i = 0; i <= a.degree(); i += 2) c.push_back(a.coeff(i));
      return Poly(k, c);
    };
    for (int i = 0; i < 40; ++i) {
      Poly an = random_poly(k, rng, 2), ad = random_poly(k, rng, 1);
      Poly bn = random_poly(k, rng, 3), bd = random_poly(k, rng, 2);
      Function a_t = Function::make(Ct, an, Poly(k), ad);
      Function a_s = Function::make(Cs, pull(an), Poly(k), pull(ad));
      Function b_s = Function::make(Cs, bn, Poly(k), bd);
      Function Nb = Function::make(Ct, even_to_t(bn * neg_s(bn)), Poly(k), even_to_t(bd * neg_s(bd)));
      FunctionMilnor down = sym(Ct, {a_t, Nb});
      FunctionMilnor up = sym(Cs, {a_s, b_s});
      std::set<Place> ws;
      for (auto& w : milnor_support(down)) ws.insert(w);
      for (auto& v : milnor_support(up))
        ws.insert(v.is_infinite() ? p1_infinity(Ct) : [&] {
          // image of v: the irreducible factor of pi_v(s) pi_v(-s) in t
          Poly img = even_to_t(v.pi * neg_s(v.pi));
          return p1_place(Ct, factor(img).factors[0].first);
        }());
      for (auto& w : ws) {
        FiniteClass lhs = steinberg_reduce(transfer(tame_symbol(down, w), k));
        FiniteMilnor acc(k, 1);
        if (w.is_infinite()) {
          acc += transfer(tame_symbol(up, p1_infinity(Cs)), k);
        } else {
          for (auto& [f, e] : factor(pull(w.pi)).factors) acc += transfer(tame_symbol(up, p1_place(Cs, f)), k);
        }
        EXPECT_EQ(lhs, steinberg_reduce(acc)) << w.to_string();
      }
    }
  }
}

TEST(Milnor, Parsing) {
  CurveRef C = P1(5);
  FunctionMilnor x = parse_milnor("2*{t,t-1} - {t+2,t+3}", C);
  EXPECT_EQ(x.degree(), 2);
  EXPECT_EQ(x.terms().size(), 2u);
  EXPECT_EQ(to_string(x), "2*{t, t+4} - {t+2, t+3}");
  EXPECT_THROW(parse_milnor("{t} + {t,t}", C), Error);
  EXPECT_THROW(parse_milnor("{t, 0}", C), Error);
  EXPECT_THROW(parse_milnor("", C), Error);
  EXPECT_THROW(parse_milnor("{t", C), Error);
}
