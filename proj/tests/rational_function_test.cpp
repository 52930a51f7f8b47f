#include <gtest/gtest.h>

#include <random>

#include "asdist/arith.hpp"
#include "asdist/rational_function.hpp"

using namespace asdist;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, bool unit_constant) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-4, 4);
  IntPoly a(deg(rng) + 1);
  for (auto& c : a) c = coef(rng);
  if (unit_constant) a[0] = 1;
  poly::trim(a);
  return a;
}

}  // namespace

TEST(RationalFunction, CancelsCommonFactor) {
  // (2 - 2t) / (2 - 4t + 2t^2) = 1 / (1 - t)
  const RationalFunction f({2, -2}, {2, -4, 2});
  EXPECT_EQ(f.numerator(), (IntPoly{1}));
  EXPECT_EQ(f.denominator(), (IntPoly{1, -1}));
}

TEST(RationalFunction, SignNormalised) {
  const RationalFunction f({3}, {-1, 2});
  EXPECT_EQ(f.numerator(), (IntPoly{-3}));
  EXPECT_EQ(f.denominator(), (IntPoly{1, -2}));
}

TEST(RationalFunction, ZeroConstantDenominatorRejected) {
  EXPECT_THROW(RationalFunction({1}, {0, 1}), input_error);
}

TEST(RationalFunction, GeometricExpansion) {
  const Series s = RationalFunction({1}, {1, -2}).to_series(10);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(s[n], mpq_class(zpow(mpz_class(2), n)));
}

TEST(RationalFunction, Evaluation) {
  const RationalFunction f({1, 1}, {1, -3});
  EXPECT_EQ(f(mpq_class(1, 2)), mpq_class(-3));
  EXPECT_THROW(f(mpq_class(1, 3)), input_error);
  PrecisionScope scope(128);
  const Complex z = f(Complex(Real(0), Real(1)));
  // (1 + i) / (1 - 3i) = (1 + i)(1 + 3i) / 10 = (-2 + 4i) / 10
  EXPECT_LT(boost::multiprecision::abs(z.re + Real("0.2")), Real("1e-30"));
  EXPECT_LT(boost::multiprecision::abs(z.im - Real("0.4")), Real("1e-30"));
}

TEST(Poly, SquarefreeDecomposition) {
  // (1 - t)^2 (1 + t) (2 - t)^3
  IntPoly f = poly::mul(poly::mul(IntPoly{1, -1}, IntPoly{1, -1}), IntPoly{1, 1});
  f = poly::mul(f, poly::mul(IntPoly{2, -1}, poly::mul(IntPoly{2, -1}, IntPoly{2, -1})));
  const auto parts = poly::squarefree_decomposition(poly::to_q(f));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], (QPoly{1, 1}));
  EXPECT_EQ(parts[1], (QPoly{-1, 1}));
  EXPECT_EQ(parts[2], (QPoly{-2, 1}));
}

TEST(Poly, DivmodReconstructs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const QPoly a = poly::to_q(random_poly(rng, 7, false));
    QPoly b = poly::to_q(random_poly(rng, 4, false));
    if (b.empty()) continue;
    const auto [quot, rem] = poly::divmod(a, b);
    ASSERT_LT(poly::degree(rem), poly::degree(b));
    ASSERT_EQ(poly::add(poly::mul(quot, b), rem), [&] {
      QPoly t = a;
      poly::trim(t);
      return t;
    }());
  }
}

TEST(RationalFunctionProperty, ScalingInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly n = random_poly(rng, 4, false), d = random_poly(rng, 4, true);
    const IntPoly c = random_poly(rng, 3, true);
    ASSERT_EQ(RationalFunction(poly::mul(n, c), poly::mul(d, c)), RationalFunction(n, d));
  }
}

TEST(RationalFunctionProperty, SeriesIsMultiplicative) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalFunction f(random_poly(rng, 3, false), random_poly(rng, 3, true));
    const RationalFunction g(random_poly(rng, 3, false), random_poly(rng, 3, true));
    ASSERT_EQ((f * g).to_series(9), f.to_series(9) * g.to_series(9));
  }
}

TEST(RationalFunctionProperty, SeriesSatisfiesDenominatorRecurrence) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalFunction f(random_poly(rng, 3, false), random_poly(rng, 3, true));
    const Series s = f.to_series(12);
    const Series back = s * series_from_poly<mpq_class, mpz_class>(f.denominator(), 12);
    for (std::size_t n = 0; n <= 12; ++n) {
      const mpq_class expect = n < f.numerator().size() ? mpq_class(f.numerator()[n]) : mpq_class(0);
      ASSERT_EQ(back[n], expect);
    }
  }
}
