#include <gtest/gtest.h>

#include <random>

#include "symk/functors.hpp"
#include "symk/parse.hpp"

using namespace symk;

namespace {

FunctorRef prepared(const std::string& lit, FieldRef k, int D) {
  FunctorRef F = make_functor(lit, k);
  auto T = std::make_shared<const FieldTower>(k, tower_degree(D, F->extra_degrees()));
  F->prepare(T, D);
  return F;
}

std::string val(const FunctorRef& F, int d) { return F->group(d).group().to_string(); }

IntVec add(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

IntVec times(IntVec a, i64 k) {
  for (auto& x : a) x *= k;
  return a;
}

bool same(const FunctorRef& F, const IntVec& a, const IntVec& b, int d) { return F->coords(a, d) == F->coords(b, d); }

// Sample elements: the whole group when finite and small, a few lattice points otherwise.
std::vector<IntVec> sample(const FunctorRef& F, int d) {
  for (auto& o : F->group(d).orders())
    if (o == 0) {
      std::vector<IntVec> out;
      std::mt19937_64 rng(d);
      for (int i = 0; i < 40; ++i) {
        IntVec v(F->group(d).raw_rank());
        for (auto& x : v) x = static_cast<long>(rng() % 50) - 25;
        out.push_back(v);
      }
      return out;
    }
  return F->elements(d);
}

}  // namespace

TEST(Functors, ValueExamples) {
  EXPECT_EQ(val(prepared("Gm", GF::prime(5), 1), 1), "Z/4");
  EXPECT_EQ(val(prepared("E/GF(5):y^2=x^3+x+1", GF::prime(5), 1), 1), "Z/9");
  auto H = prepared("h0(P1 minus {(t^2+1)})", GF::prime(3), 2);
  EXPECT_EQ(val(H, 1), "Z/4 + Z");
  EXPECT_EQ(val(H, 2), "Z/8 + Z");
  auto R = prepared("Res(GF(9))Gm", GF::prime(3), 2);
  EXPECT_EQ(val(R, 1), "Z/8");
  EXPECT_EQ(val(R, 2), "Z/8 + Z/8");
  EXPECT_EQ(val(prepared("Z", GF::prime(5), 1), 1), "Z");
  EXPECT_EQ(val(prepared("Z/6", GF::prime(5), 1), 1), "Z/6");
  EXPECT_EQ(val(prepared("Gm", GF::standard(3, 2), 2), 2), "Z/80");
  auto E2 = prepared("E/GF(5):y^2=x^3+x+1", GF::prime(5), 2);
  // a_1 = 5 + 1 - 9 = -3, a_2 = a_1^2 - 2q = -1, #E(F_25) = 25 + 1 + 1
  EXPECT_EQ(E2->group(2).group().order(), 27);
}

TEST(Functors, Literals) {
  FieldRef k = GF::prime(5);
  EXPECT_EQ(make_functor("Gm", k)->name(), "Gm");
  EXPECT_EQ(make_functor("Z/6", k)->name(), "Z/6");
  EXPECT_EQ(make_functor("h0(P1 minus {(t^2+2),inf})", k)->name(), "h0(P1 minus {inf,(t^2+2)})");
  EXPECT_TRUE(make_functor("E/GF(5):y^2=x^3+x+1", k)->proper());
  EXPECT_TRUE(make_functor("h0(P1 minus {(t)})", k)->curve_like());
  EXPECT_THROW(make_functor("Gq", k), Error);
  EXPECT_THROW(make_functor("Res(GF(25))Gm", GF::standard(5, 2)), Error);
  EXPECT_THROW(make_functor("E/GF(7):y^2=x^3+x+1", k), Error);
}

TEST(Functors, MackeyCohomological) {
  struct Case {
    std::string lit;
    FieldRef k;
  };
  std::vector<Case> cases = {
      {"Gm", GF::prime(3)},
      {"Gm", GF::prime(5)},
      {"Gm", GF::prime(7)},
      {"Gm", GF::standard(3, 2)},
      {"Z", GF::prime(5)},
      {"Z/6", GF::prime(7)},
      {"Res(GF(9))Gm", GF::prime(3)},
      {"Res(GF(25))Gm", GF::prime(5)},
      {"E/GF(5):y^2=x^3+x+1", GF::prime(5)},
      {"E/GF(7):y^2=x^3+3", GF::prime(7)},
      {"h0(P1 minus {(t^2+1)})", GF::prime(3)},
      {"h0(P1 minus {(t),inf})", GF::prime(3)},
      {"h0(P1 minus {(t),(t+1),(t^2+2)})", GF::prime(5)},
  };
  for (auto& c : cases) {
    FunctorRef F = prepared(c.lit, c.k, 3);
    for (int d = 1; d <= 3; ++d) {
      for (auto& a : sample(F, d)) {
        IntVec fa = a;
        for (int i = 0; i < d; ++i) fa = F->frob(fa, d);
        ASSERT_TRUE(same(F, fa, a, d)) << c.lit << " frob^d, d=" << d;
        for (int d2 = d; d2 <= 3; d2 += d) {
          IntVec r = F->res(a, d, d2);
          ASSERT_TRUE(same(F, F->tr(r, d2, d), times(a, d2 / d), d)) << c.lit << " tr res " << d << "->" << d2;
          ASSERT_TRUE(same(F, F->res(F->frob(a, d), d, d2), F->frob(r, d2), d2)) << c.lit << " res frob";
        }
      }
      // tr of res on the big level vs the Galois orbit sum, checked on every element of the big level
      for (int d2 = 2 * d; d2 <= 3; d2 += d) {
        for (auto& b : sample(F, d2)) {
          IntVec lhs = F->res(F->tr(b, d2, d), d, d2), rhs = F->zero(d2), conj = b;
          for (int k = 0; k < d2 / d; ++k) {
            rhs = add(rhs, conj);
            for (int i = 0; i < d; ++i) conj = F->frob(conj, d2);
          }
          ASSERT_TRUE(same(F, lhs, rhs, d2)) << c.lit << " res tr = orbit sum " << d << "->" << d2;
          ASSERT_TRUE(same(F, F->tr(F->frob(b, d2), d2, d), F->tr(b, d2, d), d)) << c.lit << " tr frob";
        }
      }
    }
  }
}

TEST(Functors, Cocharacters) {
  FieldRef k5 = GF::prime(5);
  auto G = std::dynamic_pointer_cast<GmFunctor>(prepared("Gm", k5, 1));
  const auto& T = G->tower();
  EXPECT_EQ(G->value_string(G->apply_cocharacter({Int(1)}, T.embed(k5->from_int(3)), 1), 1), "3");
  EXPECT_EQ(G->value_string(G->apply_cocharacter({Int(2)}, T.embed(k5->from_int(2)), 1), 1), "4");

  FieldRef k3 = GF::prime(3);
  auto R = std::dynamic_pointer_cast<ResFunctor>(prepared("Res(GF(9))Gm", k3, 2));
  auto chis = R->cocharacters(1);
  ASSERT_EQ(chis.size(), 1u);
  Elem two = R->tower().embed(k3->from_int(2));
  EXPECT_EQ(R->coords(R->apply_cocharacter(chis[0], two, 1), 1), R->coords(R->unit_inclusion(k3->from_int(2), 1), 1));
  // 2 has order 2 in F_9^*
  EXPECT_EQ(R->coords(R->unit_inclusion(k3->from_int(2), 1), 1), IntVec{Int(4)});

  for (std::string lit : {"Gm", "Res(GF(9))Gm", "h0(P1 minus {(t^2+1),(t)})", "h0(P1 minus {(t),inf})"}) {
    FunctorRef F = prepared(lit, k3, 3);
    const FieldTower& Tw = F->tower();
    for (int d = 1; d <= 3; ++d) {
      Elem g = Tw.gamma(d);
      for (auto& chi : F->cocharacters(d)) {
        // homomorphism on T_d^*
        for (u64 i = 0; i < Tw.units(d); ++i)
          for (u64 j = 0; j < Tw.units(d); j += 3) {
            IntVec ab = F->apply_cocharacter(chi, pow(g, i) * pow(g, j), d);
            IntVec s = add(F->apply_cocharacter(chi, pow(g, i), d), F->apply_cocharacter(chi, pow(g, j), d));
            ASSERT_TRUE(same(F, ab, s, d)) << lit;
          }
        // Frobenius permutes the cocharacters defined over T_d
        bool found = false;
        for (auto& chi2 : F->cocharacters(d))
          found = found || same(F, F->frob(chi, d), F->apply_cocharacter(chi2, pow(g, Tw.q()), d), d);
        ASSERT_TRUE(found) << lit << " Galois stability";
      }
    }
  }
}

TEST(Functors, LocalSymbolExamples) {
  FieldRef k = GF::prime(5);
  CurveRef C = p1_curve(k);
  auto E = prepared("E/GF(5):y^2=x^3+x+1", k, 1);
  Section s;
  s.curve = C;
  s.point = parse_point("(0,1)", parse_curve("E/GF(5): y^2 = x^3 + x + 1"));
  Place v0 = parse_place("(t)", C);
  EXPECT_TRUE(E->is_regular(s, v0));
  EXPECT_EQ(E->value_string(E->reduce(s, v0), 1), "(0,1)");
  EXPECT_EQ(E->value_string(E->local_symbol(s, parse_function("t", C), v0), 1), "(0,1)");
  EXPECT_EQ(E->value_string(E->local_symbol(s, parse_function("1+t", C), v0), 1), "O");

  auto G = prepared("Gm", k, 1);
  Section u;
  u.curve = C;
  u.unit = parse_function("t", C);
  EXPECT_EQ(G->value_string(G->local_symbol(u, parse_function("t-1", C), parse_place("(t-1)", C)), 1), "1");
  u.unit = parse_function("t/(t-1)", C);
  EXPECT_FALSE(G->is_regular(u, v0));
  EXPECT_THROW(G->reduce(u, v0), Error);
  u.unit = parse_function("(t-2)/(t-3)", C);
  EXPECT_EQ(G->value_string(G->reduce(u, v0), 1), "4");
  u.unit = parse_function("t", C);
  EXPECT_EQ(G->value_string(G->local_symbol(u, parse_function("t-1", C), v0), 1), "4");
}

TEST(Functors, H0PointsAndExactness) {
  FieldRef k = GF::prime(5);
  auto H = std::dynamic_pointer_cast<H0Functor>(prepared("h0(P1 minus {(t),(t^2+2)})", k, 2));
  EXPECT_EQ(H->base_point().to_string(), "(t+4)");
  for (int d = 1; d <= 2; ++d) {
    auto G = H->group(d).group();
    EXPECT_EQ(G.free_rank(), 1);
    Int tors = 1;
    for (auto& x : G.invariants())
      if (x != 0) tors *= x;
    EXPECT_EQ(tors, H->toric_order(d));
  }
  // Every point has degree one and the base point is the zero of the toric part.
  const auto& T = H->tower();
  IntVec b = H->point_class(T.embed(k->from_int(1)), 1);
  EXPECT_EQ(H->coords(b, 1), H->coords(IntVec{Int(1), 0, 0}, 1));
  // g = 1 + t(t^2+2) is 1 on D, so div(g) has trivial class.
  auto H3 = std::dynamic_pointer_cast<H0Functor>(prepared("h0(P1 minus {(t),(t^2+2)})", k, 3));
  const auto& T3 = H3->tower();
  Poly g = parse_poly("t^3+2*t+1", k);
  IntVec cls = times(H3->point_class(std::nullopt, 1), -3);
  for (auto& [pi, m] : factor(g).factors) {
    int e = pi.degree();
    IntVec c = H3->tr(H3->point_class(T3.embed(residue_of(Poly::x(k), pi)), e), e, 1);
    cls = add(cls, times(c, m));
  }
  EXPECT_TRUE(same(H3, cls, H3->zero(1), 1));
  // while a function that is not constant on D gives a nonzero class
  IntVec bad = add(H3->point_class(T3.embed(k->from_int(2)), 1), times(H3->point_class(std::nullopt, 1), -1));
  EXPECT_FALSE(same(H3, bad, H3->zero(1), 1));
}

TEST(Functors, CorollaryC1) {
  FieldRef k = GF::prime(5);
  CurveRef C = p1_curve(k);
  std::vector<Place> places = places_of_degree(C, 1);
  for (std::string lit : {"Gm", "Res(GF(25))Gm", "h0(P1 minus {(t),(t+1)})", "h0(P1 minus {(t-2),inf})"}) {
    FunctorRef F = prepared(lit, k, 1);
    Rng rng(101);
    int checked_a = 0, checked_b = 0;
    for (int it = 0; it < 100; ++it) {
      Section s = F->random_section(C, rng, 3);
      Function f = random_function(C, rng, 3);
      for (auto& v : places) {
        if (F->is_regular(s, v)) {
          ASSERT_TRUE(same(F, F->local_symbol_toric(s, f, v), times(F->reduce(s, v), valuation(f, v)), 1))
              << lit << " a) at " << v.to_string();
          ++checked_a;
        }
        Function g = Function::from_int(C, 1) + uniformizer(v) * f;
        if (valuation(g - Function::from_int(C, 1), v) > 0) {
          ASSERT_TRUE(same(F, F->local_symbol_toric(s, g, v), F->zero(1), 1)) << lit << " b) at " << v.to_string();
          ++checked_b;
        }
      }
    }
    EXPECT_GT(checked_a, 100) << lit;
    EXPECT_GT(checked_b, 100) << lit;
  }
}

TEST(Functors, ReciprocityPerFunctor) {
  FieldRef k = GF::prime(5);
  CurveRef C = p1_curve(k);
  CurveRef E = parse_curve("E/GF(5): y^2 = x^3 + x + 1");
  struct Case {
    std::string lit;
    CurveRef C;
  };
  std::vector<Case> cases = {{"Gm", C},
                             {"Z/6", C},
                             {"Res(GF(25))Gm", C},
                             {"E/GF(5):y^2=x^3+x+1", C},
                             {"E/GF(5):y^2=x^3+x+1", E},
                             {"h0(P1 minus {(t),(t+1)})", C},
                             {"h0(P1 minus {(t-2),inf})", C},
                             {"Gm", E}};
  for (auto& c : cases) {
    FunctorRef F = prepared(c.lit, k, 4);
    Rng rng(7);
    int done = 0;
    for (int it = 0; it < 600 && done < 200; ++it) {
      Section s = F->random_section(c.C, rng, 2);
      Function f = random_function(c.C, rng, 2);
      std::set<Place> S;
      for (auto& v : support(f)) S.insert(v);
      for (auto& v : F->irregular_places(s)) S.insert(v);
      IntVec total = F->zero(1);
      bool skip = false;
      for (auto& v : S) {
        if (v.degree > 4) {
          skip = true;
          break;
        }
        total = add(total, F->tr(F->local_symbol(s, f, v), v.degree, 1));
      }
      if (skip) continue;
      ++done;
      ASSERT_TRUE(same(F, total, F->zero(1), 1)) << c.lit << " on " << c.C->to_string() << ": " << s.to_string()
                                                  << " with " << f.to_string();
    }
    EXPECT_EQ(done, 200) << c.lit;
  }
}
