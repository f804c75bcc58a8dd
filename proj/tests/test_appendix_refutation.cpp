#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "minkowski/appendix_refutation.hpp"

using namespace minkowski;

TEST(TestFunction, ShapesAndSupport) {
  const auto b = TestFunction::bump();
  EXPECT_EQ(b(0.3), 0.0);
  EXPECT_EQ(b(0.5), 0.0);
  EXPECT_EQ(b(1.0), 0.0);
  EXPECT_DOUBLE_EQ(b(0.75), 1.0);  // 16 (1/2)^2 (1/2)^2
  EXPECT_EQ(b.smoothness(), 1);
  const auto c = TestFunction::cutoff(2);
  EXPECT_EQ(c(0.5), 0.0);
  EXPECT_EQ(c(1.0), 1.0);
  EXPECT_DOUBLE_EQ(c(0.75), 0.25);
  EXPECT_EQ(TestFunction{}.tag, TestFunctionTag::polynomial_cutoff);
  EXPECT_THROW(check_support(0, 1), std::domain_error);
  EXPECT_THROW(check_support(0.5, 1.2), std::domain_error);
}

TEST(NaylorIntegral, ZeroFunction) {
  const auto r = naylor_integral([](double) { return 0.0; }, 0.5, 1, 10, Precision{256});
  EXPECT_EQ(r.value, 0.0);
}

TEST(NaylorIntegral, Linearity) {
  const auto f1 = TestFunction::bump(), f2 = TestFunction::cutoff(3);
  const double tau = 12;
  const auto a = naylor_integral(f1, tau), b = naylor_integral(f2, tau);
  const auto s = naylor_integral([&](double x) { return f1(x) + 2 * f2(x); }, 0.5, 1, tau, Precision{256});
  EXPECT_NEAR(s.value, a.value + 2 * b.value, a.error_estimate + 2 * b.error_estimate + s.error_estimate + 1e-30);
}

TEST(NaylorIntegral, BumpAgainstAsymptoticSubstitution) {
  const auto f = TestFunction::bump();
  const auto q = naylor_integral(f, 10);
  const auto o = naylor_integral_asymptotic(f, 10);
  EXPECT_NEAR(q.value / o.value, 1.0, 0.3);
}

TEST(NaylorIntegral, ErrorWithinSignalScale) {
  for (double tau : {5.0, 15.0, 30.0}) {
    const auto r = naylor_integral(TestFunction::cutoff(), tau);
    EXPECT_LE(r.error_estimate, 1e-3 * naylor_scale(tau)) << tau;
    EXPECT_TRUE(std::isfinite(r.value));
  }
}

TEST(NaylorIntegral, IndependentKernelOracle) {
  // same integral with the kernel from an adaptive Gauss-Kronrod over t, in
  // long double, at tau = 4 where double cancellation is still harmless
  const double tau = 4;
  const auto f = TestFunction::cutoff();
  auto K = [&](double x) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<long double, 61>::integrate(
        [&](long double t) { return std::exp(-x * std::cosh(t)) * std::cos(tau * t); }, 0.0L, 12.0L, 15, 1e-18L);
  };
  const double direct = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return static_cast<double>(K(x)) * f(x) / x; }, 0.5, 1.0, 10, 1e-14);
  EXPECT_NEAR(naylor_integral(f, tau).value, direct, 1e-12);
}

TEST(NaylorIntegral, PrecisionFloor) {
  EXPECT_THROW(naylor_integral(TestFunction::cutoff(), 40, Precision{64}), PrecisionError);
  EXPECT_THROW(naylor_integral(TestFunction::cutoff(), -1), std::domain_error);
}

TEST(DecayScan, SingleWindowNonvanishing) {
  const auto rep = decay_scan(TestFunction::bump(), {6}, 16, Precision{256}, 1);
  ASSERT_EQ(rep.windows.size(), 1u);
  EXPECT_GT(rep.windows[0].max_n2, 0);
  EXPECT_EQ(rep.tau.size(), 16u);
  for (double t : rep.tau) {
    EXPECT_GE(t, 6);
    EXPECT_LE(t, 12);
  }
  for (double v : rep.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(DecayScan, Preconditions) {
  EXPECT_THROW(decay_scan(TestFunction::cutoff(2, 0.4, 1), {10}, 64), std::domain_error);
  EXPECT_THROW(decay_scan(TestFunction::cutoff(), {10}, 1), std::invalid_argument);
  // too coarse to follow the phase tau log x across the support
  EXPECT_THROW(decay_scan(TestFunction::cutoff(), {20}, 8), std::invalid_argument);
}

TEST(DecayScan, GrowthAcrossSmallWindows) {
  // cheap version of the acceptance scan: tau^2-normalized maxima grow, tau^{3/2} ones stay in a band
  const auto rep = decay_scan(TestFunction::cutoff(), {5, 10}, 24, Precision{256}, 1);
  ASSERT_EQ(rep.growth_n2.size(), 1u);
  EXPECT_GT(rep.growth_n2[0], 1.2);
  const double r = rep.windows[1].max_n32 / rep.windows[0].max_n32;
  EXPECT_GT(r, 1 / 1.5);
  EXPECT_LT(r, 1.5);
}
