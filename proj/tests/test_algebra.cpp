#include <gtest/gtest.h>

#include <random>
#include <set>

#include "symk/poly.hpp"

using namespace symk;

namespace {

FieldRef gf9() { return GF::extension(3, {1, 0, 1}); }  // x^2+1

Elem el(FieldRef f, std::vector<u32> c) { return f->from_coeffs(c); }

Poly random_poly(FieldRef f, int deg, std::mt19937_64& rng, bool monic) {
  std::vector<Elem> c;
  for (int i = 0; i < deg; ++i) c.push_back(f->from_index(rng() % f->order()));
  c.push_back(monic ? f->one() : f->from_index(1 + rng() % (f->order() - 1)));
  return Poly(f, c);
}

}  // namespace

namespace symk {
void PrintTo(const Poly& p, std::ostream* os) { *os << p.to_string(); }
void PrintTo(const Elem& e, std::ostream* os) { *os << to_string(e); }
}  // namespace symk

TEST(Field, PrimeArithmetic) {
  FieldRef f = GF::prime(5);
  EXPECT_EQ(f->from_int(3) * f->from_int(4), f->from_int(2));
  for (int a = 0; a < 5; ++a) EXPECT_EQ(f->one() * f->from_int(a), f->from_int(a));
  EXPECT_THROW(f->one() / f->zero(), Error);
}

TEST(Field, ExtensionPower) {
  FieldRef f = gf9();
  Elem a = el(f, {1, 1});
  EXPECT_EQ(pow(a, 4u), f->from_int(2));
}

TEST(Field, MismatchThrows) {
  try {
    (void)(GF::prime(5)->one() + GF::prime(7)->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
}

TEST(Field, RejectsReducibleModulus) { EXPECT_THROW(GF::extension(5, {1, 0, 1}), Error); }

TEST(Field, AxiomsRandom) {
  std::mt19937_64 rng(11);
  for (FieldRef f : {GF::prime(7), gf9(), GF::standard(5, 3), GF::standard(2, 5)}) {
    for (int i = 0; i < 300; ++i) {
      Elem a = f->from_index(rng() % f->order()), b = f->from_index(rng() % f->order()),
           c = f->from_index(rng() % f->order());
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) - b, a);
      if (!a.is_zero()) EXPECT_TRUE((a * inverse(a)).is_one());
    }
  }
}

TEST(Field, NormTrace) {
  FieldRef f = gf9(), k = GF::prime(3);
  EXPECT_EQ(norm(el(f, {1, 1}), k), k->from_int(2));
  EXPECT_EQ(trace(f->gen(), k), k->zero());
  Elem a = el(f, {2, 1});
  EXPECT_EQ(norm(a, f), a);
}

TEST(Field, NormMultiplicativeSurjective) {
  for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
    for (int d = 1; d <= 3; ++d) {
      if (checked_pow(p, d) > 400) continue;
      FieldRef F = GF::standard(p, d);
      for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        FieldRef K = GF::standard(p, e);
        std::set<u64> image;
        for (u64 i = 1; i < F->order(); ++i) {
          Elem a = F->from_index(i);
          image.insert(norm(a, K).index());
          Elem b = F->from_index(1 + (i * 7) % (F->order() - 1));
          EXPECT_EQ(norm(a * b, K), norm(a, K) * norm(b, K));
          EXPECT_EQ(trace(a + b, K), trace(a, K) + trace(b, K));
        }
        EXPECT_EQ(image.size(), K->order() - 1);
      }
    }
  }
}

TEST(Field, DiscreteLog) {
  FieldRef f = GF::prime(5);
  EXPECT_EQ(discrete_log(f->from_int(4), f->from_int(2)), 2u);
  EXPECT_EQ(discrete_log(f->one(), f->from_int(2)), 0u);
  FieldRef g = gf9();
  EXPECT_EQ(discrete_log(g->from_int(2), el(g, {1, 1})), 4u);
  EXPECT_THROW(discrete_log(f->from_int(3), f->from_int(4)), Error);
  EXPECT_THROW(discrete_log(f->zero(), f->from_int(2)), Error);
  FieldRef big = GF::standard(7, 6);
  Elem gen = big->primitive();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    u64 e = rng() % (big->order() - 1);
    EXPECT_EQ(discrete_log(pow(gen, e), gen), e);
  }
}

TEST(Field, SqrtAndEmbedding) {
  FieldRef f = GF::standard(5, 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Elem a = f->from_index(rng() % f->order());
    Elem s = sqrt(a * a);
    EXPECT_EQ(s * s, a * a);
  }
  FieldRef k = GF::standard(5, 2);
  const Embedding& e = embedding(k, f);
  for (u64 i = 0; i < k->order(); ++i) {
    Elem a = k->from_index(i), b = k->from_index((i * 3 + 1) % k->order());
    EXPECT_EQ(e.apply(a * b), e.apply(a) * e.apply(b));
    EXPECT_EQ(e.preimage(e.apply(a)), a);
  }
}

TEST(Poly, FactorExamples) {
  FieldRef f5 = GF::prime(5);
  auto fa = factor(Poly::from_ints(f5, {-1, 0, 1}));
  ASSERT_EQ(fa.factors.size(), 2u);
  EXPECT_EQ(fa.factors[0].first, Poly::from_ints(f5, {1, 1}));
  EXPECT_EQ(fa.factors[1].first, Poly::from_ints(f5, {-1, 1}));
  EXPECT_TRUE(is_irreducible(Poly::from_ints(GF::prime(3), {1, 0, 1})));
  auto fb = factor(Poly::from_ints(f5, {0, 2, 0, 2}));
  EXPECT_EQ(fb.lead, f5->from_int(2));
  ASSERT_EQ(fb.factors.size(), 3u);
  EXPECT_EQ(fb.factors[0].first, Poly::from_ints(f5, {0, 1}));
  EXPECT_EQ(fb.expand(), Poly::from_ints(f5, {0, 2, 0, 2}));
  EXPECT_THROW(factor(Poly(f5)), Error);
}

TEST(Poly, FactorRoundTrip) {
  std::mt19937_64 rng(17);
  std::vector<FieldRef> fields{GF::prime(3), GF::prime(5), GF::prime(7), gf9(), GF::prime(2), GF::standard(2, 2)};
  int cases = 0;
  for (int it = 0; it < 1000; ++it) {
    FieldRef f = fields[it % fields.size()];
    Poly prod = Poly::constant(f->one());
    int parts = 1 + rng() % 4;
    for (int j = 0; j < parts && prod.degree() < 12; ++j) prod = prod * random_poly(f, 1 + rng() % 4, rng, true);
    Factorization fa = factor(prod);
    EXPECT_EQ(fa.expand(), prod);
    for (std::size_t i = 0; i < fa.factors.size(); ++i) {
      EXPECT_TRUE(fa.factors[i].first.is_monic());
      EXPECT_TRUE(is_irreducible(fa.factors[i].first));
      if (i) EXPECT_TRUE(fa.factors[i - 1].first < fa.factors[i].first);
    }
    ++cases;
  }
  EXPECT_EQ(cases, 1000);
}

TEST(Integer, SmithExamples) {
  IntMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  auto s = smith_normal_form(d);
  EXPECT_EQ(s.group.to_string(), "Z/6");
  ASSERT_EQ(s.diagonal.size(), 2u);
  EXPECT_EQ(s.diagonal[0], 1);
  EXPECT_EQ(s.diagonal[1], 6);
  EXPECT_TRUE(smith_normal_form(IntMatrix::identity(3)).group.is_trivial());
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 0)).group.to_string(), "Z + Z");
}

TEST(Integer, SmithProperties) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 21) - 10;
    auto s = smith_normal_form(m, true);
    IntMatrix D = s.U * m * s.V;
    EXPECT_TRUE(D.is_diagonal());
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    EXPECT_EQ(s.U * s.Uinv, IntMatrix::identity(r));
    EXPECT_EQ(s.V * s.Vinv, IntMatrix::identity(c));
    // permutation invariance
    IntMatrix pm(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) pm(i, j) = m(r - 1 - i, (j + 1) % c);
    EXPECT_EQ(smith_normal_form(pm).group, s.group);
    if (r == c) {
      Int det = abs(determinant(m));
      if (det != 0) EXPECT_EQ(s.group.order(), det);
    }
  }
}

TEST(Integer, LatticeMembership) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + rng() % 5;
    Lattice L(n);
    std::vector<IntVec> gens;
    for (int k = 0; k < 4; ++k) {
      IntVec v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 13) - 6;
      gens.push_back(v);
      L.add(v);
    }
    IntVec comb(n);
    for (auto& g : gens) {
      long c = static_cast<long>(rng() % 7) - 3;
      for (std::size_t j = 0; j < n; ++j) comb[j] += c * g[j];
    }
    EXPECT_TRUE(L.contains(comb));
    std::vector<Int> inv;
    auto s = smith_normal_form(IntMatrix::from_rows(gens, n));
    EXPECT_EQ(L.quotient(), FiniteAbelianGroup([&] {
                std::vector<Int> v = s.diagonal;
                for (std::size_t i = s.diagonal.size(); i < n; ++i) v.push_back(0);
                return v;
              }()));
  }
}

TEST(Integer, QuotientCoordinates) {
  // Z^2 / <(2,0),(0,3)> = Z/6
  QuotientGroup g({2, 3}, {});
  ASSERT_EQ(g.orders().size(), 1u);
  EXPECT_EQ(g.orders()[0], 6);
  IntVec a = g.coords({1, 0}), b = g.coords({0, 1}), c = g.coords({1, 1});
  EXPECT_EQ((a[0] + b[0]) % 6, c[0]);
  EXPECT_EQ(g.coords({2, 3})[0], 0);
}
