#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "minkowski/identities.hpp"

using namespace minkowski;

namespace {

struct Identities : ::testing::Test {
  static void SetUpTestSuite() {
    parts_riemann_grid_setting() = 22;
    table_ = new CoefficientTable(build_coefficient_table(256, 1e-10));
  }
  static void TearDownTestSuite() {
    delete table_;
    table_ = nullptr;
  }
  static const CoefficientTable& table() { return *table_; }
  static CoefficientTable* table_;
};
CoefficientTable* Identities::table_ = nullptr;

}  // namespace

TEST(Theorem1Kernel, BoundedNearZero) {
  for (double s : {0.1, 1.0, two_pi, 50.0}) {
    const double k = theorem1_kernel(s, 1e-8);
    EXPECT_TRUE(std::isfinite(k));
    EXPECT_NEAR(k, -s * s, 1e-6 * s * s);
    EXPECT_EQ(theorem1_kernel(s, 0), -s * s);
    // the display and its simplified form are the same function
    for (double t : {1e-3, 0.7, 12.0, 900.0})
      EXPECT_NEAR(theorem1_kernel(s, t), theorem1_kernel_verbatim(s, t), 1e-12 * (1 + s * s)) << s << " " << t;
  }
}

TEST(Theorem1, DenominatorNeverVanishes) {
  for (double s = 0; s < 50; s += 0.01) EXPECT_GE(std::abs(2.0 * std::exp(cplx(0, 2 * s)) - std::exp(cplx(0, s))), 1 - 1e-15);
}

TEST(Theorem1, AFunctionalFinite) {
  for (double s : {0.1, 1.0, two_pi, 50.0}) {
    const auto a = a_functional(s, 1000);
    EXPECT_TRUE(std::isfinite(a.estimate.real()) && std::isfinite(a.estimate.imag())) << s;
    EXPECT_TRUE(std::isfinite(a.verbatim.real()) && std::isfinite(a.verbatim.imag())) << s;
    EXPECT_GT(a.verbatim_tail_bound, 0) << s;
  }
}

TEST(Theorem1, DoublingWithinTailBound) {
  const auto a1 = a_functional(two_pi, 1000), a2 = a_functional(two_pi, 2000);
  EXPECT_LE(std::abs(a2.verbatim - a1.verbatim), a1.verbatim_tail_bound);
  EXPECT_LE(std::abs(a2.estimate - a1.estimate), a1.tail_estimate + a1.quadrature_error + a2.quadrature_error);
}

TEST(Theorem1, ResidualAtModerateX) {
  for (double s : {1.0, two_pi}) {
    const auto r = theorem1_residual(s, 2000);
    EXPECT_TRUE(r.within_bound()) << s << " residual " << r.residual << " bound " << r.bound();
    EXPECT_LT(r.residual, 1e-3);
    EXPECT_EQ(r.truncation.parameter, "X");
    EXPECT_NEAR(r.residual, std::abs(r.lhs - r.rhs), 1e-18);
    EXPECT_GE(r.diagnostic("denominator_modulus"), 1.0);
  }
}

TEST(Theorem1, ResidualShrinksWithX) {
  const auto r1 = theorem1_residual(two_pi, 500), r2 = theorem1_residual(two_pi, 4000);
  EXPECT_LT(r2.residual, r1.residual);
}

TEST(BesselIdentity, ClosedFormLimit) {
  // x = 1, s = 0: x / p with p = eta - i x -> i
  EXPECT_LT(std::abs(bessel_closed_form(1, 0, 1e-9) - cplx(0, 1)), 1e-8);
}

TEST(BesselIdentity, QuadratureAgainstClosedForm) {
  const auto r = bessel_identity_residual(1, 1, 0.1);
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_TRUE(r.within_bound());
  for (double x : {0.5, 2.0})
    for (double s : {0.0, 3.0}) EXPECT_LT(bessel_identity_residual(x, s, 0.05).residual, 1e-8) << x << " " << s;
}

TEST(BesselIdentity, EtaZeroRejected) {
  EXPECT_THROW(bessel_identity_residual(1, 1, 0), std::domain_error);
  EXPECT_THROW(bessel_regularized_quadrature(1, 1, -0.1), std::domain_error);
}

TEST(BesselIdentity, ExtrapolatedLimit) {
  const auto r = bessel_limit_residual(2, 3);
  EXPECT_LT(r.residual, 1e-4);
  EXPECT_LT(std::abs(r.rhs - cplx(0, 1) * std::exp(cplx(0, -1.5))), 1e-15);
}

TEST(MockMeasure, PointMassIdentity) {
  for (double s : {1.0, 3.0}) {
    const auto r = mock_measure_residual(s);
    EXPECT_LT(r.residual, 1e-6) << s;
    EXPECT_LT(std::abs(r.rhs - cplx(0, 1) * std::exp(cplx(0, -s))), 1e-15);
  }
}

TEST_F(Identities, FourierSeriesTrivialPoints) {
  EXPECT_EQ(fourier_series_residual(0, table(), 256).residual, 0.0);
  EXPECT_LT(fourier_series_residual(0.5, table(), 256).residual, 1e-15);
  EXPECT_THROW(fourier_series_residual(1.5, table(), 16), std::domain_error);
  EXPECT_THROW(fourier_series_residual(0.3, table(), 1000), std::out_of_range);
}

TEST_F(Identities, FourierSeriesDecreases) {
  // pointwise residuals are not monotone in N step by step; the claim is along N = 16, 256, 4096
  for (double x : {1.0 / 3, 1.0 / 7, 0.9}) {
    const double r16 = fourier_series_residual(x, table(), 16).residual;
    const double r256 = fourier_series_residual(x, table(), 256).residual;
    EXPECT_LT(r256, r16) << x;
    EXPECT_LT(r256, 1e-2) << x;
  }
}

TEST_F(Identities, FourierSeriesIndependentSum) {
  // plain re-summation of the series with the table values
  const double x = 0.2;
  double s = 0;
  for (long n = 1; n <= 256; ++n) s += table().d(n) / (pi * n) * std::sin(two_pi * n * x);
  const auto r = fourier_series_residual(x, table(), 256);
  EXPECT_NEAR(r.residual, std::abs(question_mark(x) - x - s), 1e-14);
}

TEST(Symmetry, Residuals) {
  EXPECT_EQ(symmetry_residual(0).residual, 0.0);
  const auto r5 = symmetry_residual(5);
  EXPECT_TRUE(r5.within_bound());
  EXPECT_LT(r5.residual, 1e-10 * std::exp(5.0));
  const auto ri = symmetry_residual(cplx(0, two_pi));
  EXPECT_LT(std::abs(ri.lhs.imag()), 1e-10);
  EXPECT_THROW(symmetry_residual(150), std::domain_error);
}

TEST_F(Identities, PartialSums) {
  const auto st = partial_sum_stats(table(), 256);
  EXPECT_TRUE(std::isfinite(st.B));
  EXPECT_GT(st.B, 0);
  EXPECT_LE(st.max_abs_partial, st.B);
  ASSERT_FALSE(st.rows.empty());
  EXPECT_EQ(st.rows.back().N, 256);
  double signed_sum = 0;
  for (long n = 1; n <= 256; ++n) signed_sum += table().d(n);
  EXPECT_NEAR(st.rows.back().signed_sum, signed_sum, 1e-12);
  EXPECT_LT(st.rows.back().wiener / st.rows[4].wiener, 3.0);
}

TEST(PartialSums, BoundAgainstMidpointOracle) {
  // int d?/sin(pi x): symmetric, so twice the half on [0, 1/2]; dyadic midpoint sum at depth 20
  double s = 0;
  for (const auto& a : farey_partition(20)) s += a.mass() / std::sin(pi * detail::atom_mediant(a));
  EXPECT_NEAR(partial_sum_bound().value, s, 1e-4);
}

TEST(Theorem2, TermProductToSum) {
  for (long m : {1L, 2L})
    for (long n : {1L, 3L, 10L}) {
      const auto t = theorem2_term(m, n, theorem2_term_tol(m, n));
      EXPECT_NEAR(t.term, 0.5 * (t.p_plus + t.p_minus), 1e-15);
      // direct check of the product integral in y = 1/x on short panels
      using boost::math::quadrature::gauss;
      const double a = two_pi * m, b = two_pi * n, Y = 4e4, h = 0.5 / m;
      double s = 0;
      for (double lo = 1; lo < Y; lo += h)
        s += gauss<double, 20>::integrate([&](double y) { return std::cos(b / y) * std::cos(a * y) / (y * y); }, lo,
                                          lo + h);
      EXPECT_NEAR(t.term, s, 1e-8) << m << " " << n;
    }
}

TEST(Theorem2, FirstTermSubstitutionOracle) {
  for (long m : {1L, 2L, 3L}) {
    const auto direct = tail_integral(two_pi * m, 0, 0, 1e-12);
    const auto subst = p_integral_substitution(two_pi * m, 0, 1e-12);
    EXPECT_NEAR(direct.value, subst.value, 1e-8) << m;
  }
}

TEST_F(Identities, Theorem2WithinBound) {
  const double C = 1.6;
  const auto r = theorem2_residual(1, table(), 256, C);
  EXPECT_TRUE(r.within_bound()) << "residual " << r.residual << " bound " << r.bound();
  EXPECT_EQ(r.truncation.parameter, "N");
  EXPECT_GT(r.truncation.tail_bound, 0);
  // a larger constant only widens the majorant
  EXPECT_GT(theorem2_residual(1, table(), 256, 2 * C).truncation.tail_bound, r.truncation.tail_bound);
}

TEST_F(Identities, LemmaSeriesTailDecreases) {
  EXPECT_GT(lemma_series_tail(table(), 64), lemma_series_tail(table(), 256));
}
