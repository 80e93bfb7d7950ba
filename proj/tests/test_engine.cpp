#include <gtest/gtest.h>

#include "symk/engine.hpp"
#include "symk/parse.hpp"

using namespace symk;

namespace {

std::string mackey(FieldRef k, std::vector<std::string> F, int D) {
  return Presentation(k, F, D).quotient().to_string();
}

KGroupResult run(FieldRef k, std::vector<std::string> F, Variant v, int D, int samples = 60) {
  Problem p;
  p.base = k;
  p.functors = std::move(F);
  p.variant = v;
  p.budget.D = D;
  p.budget.samples = samples;
  p.budget.steps = 3;
  return compute_kgroup(p, 1);
}

IntVec neg(IntVec a) {
  for (auto& x : a) x = -x;
  return a;
}

bool same_class(const Presentation& P, const IntVec& a, const IntVec& b) {
  Lattice L(P.size());
  for (auto& r : P.rows()) L.add(r);
  IntVec d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return L.contains(d);
}

}  // namespace

TEST(Engine, MackeyValues) {
  EXPECT_EQ(mackey(GF::prime(5), {"Gm"}, 2), "Z/4");
  EXPECT_EQ(mackey(GF::prime(5), {"Z", "Z"}, 2), "Z");
  EXPECT_EQ(mackey(GF::prime(5), {"Z/2", "Z/3"}, 2), "0");
  EXPECT_EQ(mackey(GF::prime(5), {"E/GF(5): y^2 = x^3 + x + 1"}, 2), "Z/9");
  EXPECT_EQ(mackey(GF::prime(7), {"Gm", "Z"}, 3), "Z/6");
}

TEST(Engine, SmallKGroups) {
  EXPECT_EQ(run(GF::prime(5), {"Gm"}, Variant::K, 3).group.to_string(), "Z/4");
  EXPECT_TRUE(run(GF::prime(5), {"Gm", "Gm"}, Variant::Ktilde, 2, 0).group.is_trivial());
  EXPECT_TRUE(run(GF::prime(3), {"Gm", "Gm"}, Variant::Ktilde, 2, 0).group.is_trivial());
}

TEST(Engine, ChainIsMonotone) {
  auto r = run(GF::prime(5), {"Gm", "Gm"}, Variant::K, 2, 40);
  EXPECT_TRUE(r.monotone);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_GT(r.somekawa_rows, 0u);
  EXPECT_GT(r.geometric_rows, 0u);
}

TEST(Engine, SomekawaRowOfSteinbergDatum) {
  FieldRef k = GF::prime(7);
  Presentation P(k, std::vector<std::string>{"Gm", "Gm"}, 2);
  CurveRef C = p1_curve(k);
  Function t = Function::variable(C), one = Function::from_int(C, 1);
  for (u64 i = 2; i < 7; ++i) {
    Elem a = k->from_int(static_cast<i64>(i));
    SomekawaDatum x{C, t, {}};
    Section g1, g2;
    g1.curve = g2.curve = C;
    g1.unit = one - Function::constant(C, a) / t;
    g2.unit = one - t;
    x.g = {g1, g2};
    SteinbergDatum s{1, P.tower().embed(a), 0, 1, {1}, {1}, {}};
    EXPECT_TRUE(same_class(P, harvest_somekawa(P, x), neg(harvest_steinberg(P, s)))) << i;
  }
}

TEST(Engine, GeometricDatumRegularity) {
  FieldRef k = GF::prime(5);
  Presentation P(k, std::vector<std::string>{"Gm", "Gm"}, 2);
  CurveRef C = p1_curve(k);
  GeometricDatum x;
  x.f = parse_function("t^2+t+1", C);
  Section g;
  g.curve = C;
  g.unit = parse_function("t", C);
  x.g = {g, g};
  EXPECT_THROW(harvest_geometric(P, x), Error);
  x.f = parse_function("(t^2+1)/(t^2+2)", C);
  x.g[1].unit = parse_function("2", C);
  EXPECT_THROW(harvest_geometric(P, x), Error);  // t is irregular at (t), f(0) != 1
  x.f = parse_function("(t^2+t+2)/(t^2+2)", C);
  EXPECT_NO_THROW(harvest_geometric(P, x));
}

TEST(Engine, CoverThrough) {
  FieldRef k = GF::prime(5);
  CurveRef C = p1_curve(k);
  Rng rng(3);
  std::vector<Place> S = {parse_place("(t)", C), parse_place("(t^2+2)", C), p1_infinity(C)};
  for (int i = 0; i < 20; ++i) {
    Function f = cover_through(C, S, rng, 3, 2);
    EXPECT_FALSE(f.is_constant());
    for (auto& v : S) EXPECT_GT(valuation(f - Function::from_int(C, 1), v), 0);
    Divisor div = divisor(f);
    for (auto& [c, m] : div.terms()) EXPECT_LE(c.degree, 2);
  }
}

TEST(Engine, DeterministicAcrossThreads) {
  Problem p;
  p.base = GF::prime(5);
  p.functors = {"Gm", "h0(P1 minus {(t),inf})"};
  p.budget.D = 2;
  p.budget.samples = 30;
  auto a = compute_kgroup(p, 1), b = compute_kgroup(p, 4);
  EXPECT_EQ(a.group, b.group);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].K, b.trace[i].K);
    EXPECT_EQ(a.trace[i].Kprime_pure, b.trace[i].Kprime_pure);
  }
  EXPECT_EQ(a.somekawa_stats.accepted, b.somekawa_stats.accepted);
}

TEST(Engine, ProjectionFormulaIso) {
  auto r = check_projection_formula_iso(GF::prime(3), {"Res(GF(9))Gm"}, GF::standard(3, 2), {"Gm"}, 2, 1);
  EXPECT_TRUE(r.equal) << r.left.to_string() << " vs " << r.right.to_string();
}
