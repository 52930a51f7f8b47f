#include <gtest/gtest.h>

#include "asdist/dirichlet.hpp"

using namespace asdist;
namespace bmp = boost::multiprecision;

namespace {

FieldModel elliptic_a() { return make_field_model(2, 2, 1, {1, 0, 2}, 1); }
FieldModel elliptic_b() { return make_field_model(2, 2, 1, {1, -1, 2}, 2); }

// Expansion of 2(1 - t^2)/(1 - 4t^2) - 1 written out by hand.
Series q2_c2_closed_form(std::size_t order) {
  std::vector<mpq_class> c(order + 1, 0);
  c[0] = 1;
  for (std::size_t n = 2; n <= order; n += 2) c[n] = 6 * zpow(mpz_class(4), n / 2 - 1);
  return Series(c, order);
}

}  // namespace

TEST(Dirichlet, PhiOneRationalFieldQ2) {
  const auto m = rational_function_field(2, 2);
  EXPECT_EQ(phi_i_series(m, subgroup_count_poly(2, 1), 1, 6), Series({1, 0, 3, 0, 12, 0, 48}, 6));
}

TEST(Dirichlet, PhiIHasNoLinearTerm) {
  for (const auto& m : {rational_function_field(3, 3), elliptic_a(), elliptic_b()}) {
    const auto g = subgroup_count_poly(m.p(), 2);
    for (unsigned i = 1; i <= 2; ++i) {
      const Series s = phi_i_series(m, g, i, 5);
      EXPECT_EQ(s[0], 1);
      EXPECT_EQ(s[1], 0);
    }
  }
}

TEST(Dirichlet, UpsilonRationalFields) {
  EXPECT_EQ(upsilon_series(rational_function_field(2, 2), subgroup_count_poly(2, 1), 8), Series({-1}, 8));
  EXPECT_EQ(upsilon_series(rational_function_field(3, 3), subgroup_count_poly(3, 1), 8),
            Series({mpq_class(-1, 2)}, 8));
}

TEST(Dirichlet, UpsilonEllipticModels) {
  // L = 1 + 2t^2: Cl[2] trivial, no correction.
  EXPECT_EQ(upsilon_series(elliptic_a(), subgroup_count_poly(2, 1), 10), Series({-1}, 10));
  // L = 1 - t + 2t^2, |Cl[2]| = 2: e_0 + (e(2) - e(1)) / Z_F(t^2) = -1 + 2 / Z_F(t^2).
  const auto m = elliptic_b();
  const Series inv_zeta = ps_subst_monomial(ps_inv(zeta_series(m, 10)), mpq_class(1), 2);
  EXPECT_EQ(upsilon_series(m, subgroup_count_poly(2, 1), 10), Series({-1}, 10) + ps_scale(inv_zeta, mpq_class(2)));
}

TEST(Dirichlet, PhiSeriesQ2C2ClosedForm) {
  EXPECT_EQ(phi_series(rational_function_field(2, 2), subgroup_count_poly(2, 1), 20), q2_c2_closed_form(20));
}

TEST(Dirichlet, PhiSeriesConstantTerms) {
  EXPECT_EQ(phi_series(rational_function_field(3, 3), subgroup_count_poly(3, 1), 0)[0], 1);
  EXPECT_EQ(phi_series(rational_function_field(2, 2), subgroup_count_poly(2, 2), 6)[0], 0);
  EXPECT_EQ(phi_series(elliptic_a(), subgroup_count_poly(2, 1), 6)[0], 1);
  EXPECT_EQ(phi_series(elliptic_b(), subgroup_count_poly(2, 1), 6)[0], 3);
}

TEST(Dirichlet, PhiSeriesNonnegativeIntegers) {
  for (const auto& m : {rational_function_field(2, 2), rational_function_field(2, 4), rational_function_field(3, 3),
                        elliptic_a(), elliptic_b()}) {
    for (unsigned r = 1; r <= 3; ++r) {
      const Series s = phi_series(m, subgroup_count_poly(m.p(), r), 12);
      for (std::size_t n = 0; n <= 12; ++n) {
        ASSERT_GE(s[n], 0);
        ASSERT_EQ(s[n].get_den(), 1);
      }
      EXPECT_EQ(s[1], 0);
    }
  }
}

TEST(Dirichlet, PhiMatchesModuleEnumeration) {
  for (const auto& m : {rational_function_field(2, 2), rational_function_field(3, 3), elliptic_a()}) {
    for (unsigned r = 1; r <= 2; ++r) {
      const auto g = subgroup_count_poly(m.p(), r);
      const Series s = phi_series(m, g, 6);
      std::vector<mpz_class> by_degree(7, 0);
      for_each_module(m, 6, [&](const DivisorModule& mod) { by_degree[mod.degree()] += conductor_count(m, g, mod); });
      for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(s[n], mpq_class(by_degree[n])) << "q=" << m.q() << " r=" << r << " n=" << n;
    }
  }
}

TEST(Dirichlet, LambdaRationalExamples) {
  const auto m = rational_function_field(2, 2);
  EXPECT_EQ(lambda_rational(m, 2, 1), RationalFunction({1}, poly::mul(IntPoly{1, 0, -2}, IntPoly{1, 0, -4})));
  // p = 2: Lambda_r(t) = Z_F(q^r t^2).
  const auto e = elliptic_b();
  for (unsigned r = 1; r <= 3; ++r) {
    const Series z = ps_subst_monomial(zeta_series(e, 12), mpq_class(zpow(mpz_class(2), r)), 2);
    EXPECT_EQ(lambda_rational(e, 2, r).to_series(12), z);
  }
  // p = 3, r = 1, q = 3: Z_F(3t^2) Z_F(9t^3).
  const auto f = rational_function_field(3, 3);
  const Series z = zeta_series(f, 12);
  EXPECT_EQ(lambda_rational(f, 3, 1).to_series(12),
            ps_subst_monomial(z, mpq_class(3), 2) * ps_subst_monomial(z, mpq_class(9), 3));
}

TEST(Dirichlet, PsiForPEqualsTwoIsInverseZeta) {
  for (const auto& m : {rational_function_field(2, 2), elliptic_a(), elliptic_b()})
    for (unsigned r = 1; r <= 3; ++r)
      EXPECT_EQ(psi_series(m, 2, r, 12), ps_subst_monomial(ps_inv(zeta_series(m, 12)), mpq_class(1), 2));
}

TEST(Dirichlet, FactorisationIdentity) {
  struct Case {
    std::uint64_t p;
    unsigned r;
    std::uint64_t q;
  };
  for (const Case c : {Case{2, 1, 2}, Case{2, 2, 2}, Case{3, 1, 3}, Case{3, 2, 3}, Case{5, 1, 5}}) {
    const auto m = rational_function_field(c.p, c.q);
    const auto g = subgroup_count_poly(c.p, c.r);
    EXPECT_EQ(phi_i_series(m, g, c.r, 12), psi_series(m, c.p, c.r, 12) * lambda_rational(m, c.p, c.r).to_series(12))
        << "p=" << c.p << " r=" << c.r;
  }
  const auto e = elliptic_b();
  EXPECT_EQ(phi_i_series(e, subgroup_count_poly(2, 2), 2, 12),
            psi_series(e, 2, 2, 12) * lambda_rational(e, 2, 2).to_series(12));
}

TEST(Dirichlet, EulerFactorClosedForm) {
  for (std::uint64_t p : {2, 3, 5, 7})
    for (unsigned r = 1; r <= 3; ++r)
      for (unsigned d = 1; d <= 6; ++d) EXPECT_TRUE(euler_factor_closed_form_check(d, p, r, p, 15));
  EXPECT_TRUE(euler_factor_closed_form_check(2, 3, 2, 9, 12));
}

TEST(Dirichlet, PsiAtAbscissaRationalFieldQ2) {
  PrecisionScope scope(200);
  const auto v = psi_at_abscissa(rational_function_field(2, 2), 2, 1, 30);
  EXPECT_LE(bmp::abs(v.value - Real(3) / 8), v.error_bound + Real("1e-40"));
  EXPECT_LT(v.error_bound, Real("1e-8"));
}

TEST(Dirichlet, PsiAtAbscissaCutoffConsistency) {
  PrecisionScope scope(200);
  const auto m = rational_function_field(3, 3);
  const auto lo = psi_at_abscissa(m, 3, 1, 12), hi = psi_at_abscissa(m, 3, 1, 20);
  EXPECT_LE(bmp::abs(lo.value - hi.value), lo.error_bound + hi.error_bound);
  EXPECT_LT(hi.error_bound, lo.error_bound);
}

TEST(Dirichlet, PsiAtAgreesWithRealEvaluation) {
  PrecisionScope scope(200);
  const auto m = elliptic_b();
  const auto model = rational_function_field(3, 3);
  const Real t3 = Real(1) / 3;
  EXPECT_LT(bmp::abs(psi_at(model, 3, 1, Complex(t3), 18).re - psi_at_abscissa(model, 3, 1, 18).value), Real("1e-40"));
  EXPECT_LT(bmp::abs(psi_at(m, 2, 1, Complex(Real(1) / 2), 18).re - psi_at_abscissa(m, 2, 1, 18).value), Real("1e-40"));
}

TEST(Dirichlet, PoleAnalysisExamples) {
  const auto a = pole_analysis(2, 1);
  EXPECT_EQ(a.abscissa, 1);
  EXPECT_EQ(a.log_order, 1u);
  EXPECT_EQ(a.progression, 2u);
  const auto b = pole_analysis(3, 1);
  EXPECT_EQ(b.abscissa, 1);
  EXPECT_EQ(b.log_order, 2u);
  EXPECT_EQ(b.progression, 6u);
  EXPECT_EQ(b.max_order_angles, (std::vector<mpq_class>{0}));
  const auto c = pole_analysis(2, 3);
  EXPECT_EQ(c.abscissa, 2);
  EXPECT_EQ(c.log_order, 1u);
  EXPECT_EQ(c.progression, 2u);
  EXPECT_EQ(pole_analysis(5, 1).progression, 60u);
}

TEST(Dirichlet, CountingFunctionQ2C2) {
  const auto C = counting_function(rational_function_field(2, 2), subgroup_count_poly(2, 1), 10);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(C[2 * n], 2 * zpow(mpz_class(4), n) - 1);
  for (std::size_t n = 1; n < C.size(); ++n) EXPECT_GE(C[n], C[n - 1]);
}

TEST(Dirichlet, ExponentExamples) {
  const auto e = exponent_report(3, 2);
  EXPECT_EQ(e.lower, mpq_class(5, 24));
  EXPECT_EQ(e.upper, mpq_class(5, 18));
  EXPECT_EQ(exponent_report(2, 1).lower, 1);
}

TEST(Dirichlet, ExponentComparisonTable) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (unsigned r = 1; r <= 6; ++r) {
      const auto e = exponent_report(p, r);
      EXPECT_EQ(e.lower, abscissa(p, r) / mpq_class(zpow(mpz_class(p), r) - 1));
      EXPECT_GE(e.comparison_numerator, 0);
      EXPECT_EQ(e.comparison_sign, sgn(e.comparison_numerator));
      const bool equal = r == 1 || (p == 2 && r == 2);
      EXPECT_EQ(e.comparison_sign == 0, equal) << "p=" << p << " r=" << r;
    }
}

TEST(Dirichlet, DiscriminantView) {
  const auto m = rational_function_field(3, 3);
  const auto v = discriminant_view(m, subgroup_count_poly(3, 1), 8);
  ASSERT_TRUE(v.exact_counts);
  const auto C = counting_function(m, subgroup_count_poly(3, 1), 4);
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ((*v.exact_counts)[n], C[n / 2]);
  const auto w = discriminant_view(m, subgroup_count_poly(3, 2), 8);
  EXPECT_FALSE(w.exact_counts);
  EXPECT_NE(w.statement.find("5/24"), std::string::npos);
}
