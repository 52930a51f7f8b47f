#include <gtest/gtest.h>

#include <random>
#include <set>

#include "asdist/counting.hpp"
#include "asdist/dirichlet.hpp"
#include "asdist/oracle/artin_schreier.hpp"

using namespace asdist;
using namespace asdist::oracle;

namespace {

std::size_t count_classes(const ASContext& ctx, unsigned B) {
  std::size_t n = 0;
  enumerate_classes(ctx, B, [&](const ASRep&, const DivisorModule&) { ++n; });
  return n;
}

std::vector<mpz_class> phi_coefficients(std::uint64_t q, std::uint64_t p, unsigned r, unsigned B) {
  const Series s = phi_series(rational_function_field(p, q), subgroup_count_poly(p, r), B);
  std::vector<mpz_class> out;
  for (std::size_t n = 0; n <= B; ++n) out.push_back(s[n].get_num());
  return out;
}

GFPoly random_poly(std::mt19937_64& rng, const GF& f, unsigned max_deg) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<GFElem> coef(0, static_cast<GFElem>(f.q() - 1));
  GFPoly a(deg(rng) + 1);
  for (auto& c : a) c = coef(rng);
  gfpoly::trim(a);
  return a;
}

}  // namespace

TEST(GF, FieldAxioms) {
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 16, 25, 27}) {
    const GF f(q);
    for (GFElem a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.mul(a, 1), a);
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
      for (GFElem b = 0; b < q; ++b) {
        ASSERT_EQ(f.mul(a, b), f.mul(b, a));
        for (GFElem c = 0; c < q; c += 3) ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST(GF, FrobeniusAdditiveAndBijective) {
  for (std::uint64_t q : {4, 8, 9, 25}) {
    const GF f(q);
    std::set<GFElem> image;
    for (GFElem a = 0; a < q; ++a) {
      image.insert(f.frob(a));
      EXPECT_EQ(f.frob_inv(f.frob(a)), a);
      for (GFElem b = 0; b < q; ++b) ASSERT_EQ(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
    }
    EXPECT_EQ(image.size(), q);
  }
}

TEST(GF, TraceKernelHasIndexP) {
  for (std::uint64_t q : {2, 4, 8, 9, 27}) {
    const GF f(q);
    std::size_t zeros = 0;
    for (GFElem a = 0; a < q; ++a) {
      ASSERT_LT(f.trace(a), f.p());
      if (f.trace(a) == 0) ++zeros;
    }
    EXPECT_EQ(zeros, q / f.p());
    // Image of y -> y^p - y is the trace kernel.
    std::set<GFElem> wp;
    for (GFElem y = 0; y < q; ++y) wp.insert(f.sub(f.frob(y), y));
    EXPECT_EQ(wp.size(), q / f.p());
    for (GFElem a : wp) EXPECT_EQ(f.trace(a), 0u);
  }
}

TEST(GF, RejectsNonPrimePowers) {
  EXPECT_THROW(GF(6), input_error);
  EXPECT_THROW(GF(1), input_error);
}

TEST(Irreducibles, SmallFields) {
  EXPECT_EQ(irreducibles_up_to(2, 2), (std::vector<GFPoly>{{0, 1}, {1, 1}, {1, 1, 1}}));
  const auto three = irreducibles_up_to(2, 3);
  ASSERT_EQ(three.size(), 5u);
  EXPECT_EQ(three[3], (GFPoly{1, 1, 0, 1}));
  EXPECT_EQ(three[4], (GFPoly{1, 0, 1, 1}));
  EXPECT_EQ(irreducibles_up_to(3, 1), (std::vector<GFPoly>{{0, 1}, {1, 1}, {2, 1}}));
}

TEST(Irreducibles, CountsMatchFieldModel) {
  for (std::uint64_t q : {2, 3, 4, 5, 9}) {
    const GF f(q);
    const auto model = rational_function_field(f.p(), q);
    const auto irr = irreducibles_by_degree(f, q <= 3 ? 7 : 4);
    for (unsigned d = 1; d < irr.size(); ++d) {
      const mpz_class expect = model.prime_count(d) - (d == 1 ? 1 : 0);
      EXPECT_EQ(mpz_class(static_cast<unsigned long>(irr[d].size())), expect) << "q=" << q << " d=" << d;
    }
  }
}

TEST(ASRep, ConductorExamples) {
  const ASContext ctx(2, 3);
  const ASRep inv_x = normalize(ctx, {1}, {0, 1});
  EXPECT_EQ(rep_conductor(ctx, inv_x), (DivisorModule{{Prime{1, 0}, 2}}));
  const ASRep one = normalize(ctx, {1}, {1});
  EXPECT_EQ(one.constant, 1u);
  EXPECT_TRUE(rep_conductor(ctx, one).is_trivial());
  const ASRep cube = normalize(ctx, {0, 0, 0, 1}, {1});
  EXPECT_EQ(rep_conductor(ctx, cube), (DivisorModule{{ctx.infinite_prime(), 4}}));
  EXPECT_EQ(rep_conductor(ctx, cube).degree(), 4u);
}

TEST(ASRep, PthPowerPolesAreAbsorbed) {
  const ASContext ctx(2, 3);
  // x^2 = P(x) + x, so x^2 ~ x.
  EXPECT_EQ(normalize(ctx, {0, 0, 1}, {1}), normalize(ctx, {0, 1}, {1}));
  // 1/x^2 ~ 1/x.
  EXPECT_EQ(normalize(ctx, {1}, {0, 0, 1}), normalize(ctx, {1}, {0, 1}));
  // x^4 + 1/(x+1)^4 ~ x + 1/(x+1).
  const GF f(2);
  const GFPoly den = gfpoly::power(f, {1, 1}, 4);
  const GFPoly num = gfpoly::add(f, gfpoly::mul(f, {0, 0, 0, 0, 1}, den), {1});
  EXPECT_EQ(normalize(ctx, num, den), rep_add(ctx, normalize(ctx, {0, 1}, {1}), normalize(ctx, {1}, {1, 1})));
}

TEST(ASRep, ConstantClassesOverF4) {
  const ASContext ctx(4, 1);
  std::set<GFElem> classes;
  for (GFElem c = 0; c < 4; ++c) classes.insert(normalize(ctx, {c}, {1}).constant);
  EXPECT_EQ(classes.size(), 2u);
}

TEST(Enumerate, SmallCensus) {
  EXPECT_EQ(count_classes(ASContext(2, 1), 0), 1u);
  EXPECT_EQ(count_classes(ASContext(2, 1), 2), 7u);
  EXPECT_EQ(count_classes(ASContext(4, 1), 0), 1u);
}

TEST(Enumerate, EveryClassIsNormalizedAndUnique) {
  for (auto [q, B] : {std::pair<std::uint64_t, unsigned>{2, 6}, {3, 5}, {4, 4}}) {
    const ASContext ctx(q, B / 2);
    std::set<ASRep> seen;
    enumerate_classes(ctx, B, [&](const ASRep& rep, const DivisorModule& m) {
      ASSERT_TRUE(is_normalized(ctx, rep));
      ASSERT_EQ(rep_conductor(ctx, rep), m);
      ASSERT_LE(m.degree(), B);
      ASSERT_TRUE(seen.insert(rep).second);
    });
  }
}

TEST(Enumerate, BudgetExceeded) {
  const ASContext ctx(2, 4);
  EXPECT_THROW(enumerate_classes(ctx, 8, [](const ASRep&, const DivisorModule&) {}, 100), budget_exceeded);
}

TEST(ASRepProperty, NormalizationIdempotent) {
  for (std::uint64_t q : {2, 3, 4}) {
    const ASContext ctx(q, 3);
    enumerate_classes(ctx, 6, [&](const ASRep& rep, const DivisorModule&) {
      const auto [num, den] = to_rational(ctx, rep);
      ASSERT_EQ(normalize(ctx, num, den), rep);
    });
  }
}

TEST(ASRepProperty, ScalingPreservesConductor) {
  for (std::uint64_t q : {3, 5, 9}) {
    const ASContext ctx(q, 2);
    const std::uint64_t p = ctx.p();
    enumerate_classes(ctx, 4, [&](const ASRep& rep, const DivisorModule& m) {
      for (GFElem lambda = 1; lambda < p; ++lambda) ASSERT_EQ(rep_conductor(ctx, rep_scale(ctx, rep, lambda)), m);
    });
  }
}

TEST(ASRepProperty, NormalizationIsAdditive) {
  std::mt19937_64 rng(41);
  for (std::uint64_t q : {2, 3, 4}) {
    const ASContext ctx(q, 4);
    const GF& f = ctx.field();
    for (int trial = 0; trial < 200; ++trial) {
      const GFPoly a = random_poly(rng, f, 4), c = random_poly(rng, f, 4);
      GFPoly b = random_poly(rng, f, 3), d = random_poly(rng, f, 3);
      if (b.empty()) b = {1};
      if (d.empty()) d = {1};
      const ASRep lhs = normalize(ctx, gfpoly::add(f, gfpoly::mul(f, a, d), gfpoly::mul(f, c, b)), gfpoly::mul(f, b, d));
      ASSERT_EQ(lhs, rep_add(ctx, normalize(ctx, a, b), normalize(ctx, c, d)));
      // Adding y^p - y for a random y leaves the class unchanged.
      const GFPoly y = random_poly(rng, f, 2);
      GFPoly yp = y;
      for (std::uint64_t i = 1; i < ctx.p(); ++i) yp = gfpoly::mul(f, yp, y);
      const GFPoly shifted = gfpoly::add(f, a, gfpoly::mul(f, gfpoly::sub(f, yp, y), b));
      ASSERT_EQ(normalize(ctx, shifted, b), normalize(ctx, a, b));
    }
  }
}

TEST(ASRepProperty, CompletenessAgainstRawFunctions) {
  // Every class of conductor degree <= 3 over F_2 arises from some A/D with
  // deg A, deg D <= 3, and nothing else does.
  const unsigned B = 3;
  const ASContext ctx(2, 3);
  std::set<ASRep> generated{ASRep{}};
  enumerate_classes(ctx, B, [&](const ASRep& rep, const DivisorModule&) { generated.insert(rep); });
  std::set<ASRep> raw;
  for (unsigned an = 0; an < 16; ++an)
    for (unsigned dn = 1; dn < 16; ++dn) {
      GFPoly A(4), D(4);
      for (unsigned i = 0; i < 4; ++i) {
        A[i] = (an >> i) & 1;
        D[i] = (dn >> i) & 1;
      }
      gfpoly::trim(A);
      gfpoly::trim(D);
      const ASRep rep = normalize(ctx, A, D);
      if (rep_conductor(ctx, rep).degree() <= B) raw.insert(rep);
    }
  EXPECT_EQ(raw, generated);
}

TEST(ASRepProperty, DivisorSumMatchesUnitGroup) {
  // Classes with conductor dividing m, together with zero, number p |U_m|.
  for (std::uint64_t q : {2, 3}) {
    const auto model = rational_function_field(q, q);
    const ASContext ctx(q, 2);
    std::map<DivisorModule, std::size_t> by_conductor;
    enumerate_classes(ctx, 5, [&](const ASRep&, const DivisorModule& m) { ++by_conductor[m]; });
    for_each_module(model, 5, [&](const DivisorModule& m) {
      std::size_t total = 1;
      m.for_each_divisor([&](const DivisorModule& n) {
        const auto it = by_conductor.find(n);
        if (it != by_conductor.end()) total += it->second;
      });
      EXPECT_EQ(mpz_class(static_cast<unsigned long>(total)), q * unit_group_order(model, m)) << m.to_string();
    });
  }
}

TEST(OracleCount, RationalFieldQ2C2) {
  EXPECT_EQ(oracle_count(2, 2, 1, 6), (std::vector<mpz_class>{1, 0, 6, 0, 24, 0, 96}));
}

TEST(OracleCount, MatchesPhiSeries) {
  struct Case {
    std::uint64_t q, p;
    unsigned r, B;
  };
  for (const Case c : {Case{3, 3, 1, 4}, Case{2, 2, 2, 4}, Case{4, 2, 1, 4}, Case{3, 3, 2, 4}, Case{2, 2, 3, 5}})
    EXPECT_EQ(oracle_count(c.q, c.p, c.r, c.B), phi_coefficients(c.q, c.p, c.r, c.B))
        << "q=" << c.q << " p=" << c.p << " r=" << c.r;
}

TEST(OracleCount, InputErrors) {
  EXPECT_THROW(oracle_count(4, 3, 1, 2), input_error);
  EXPECT_THROW(oracle_count(2, 2, 0, 2), input_error);
  EXPECT_THROW(oracle_count(2, 2, 1, 12, 1000), budget_exceeded);
}
