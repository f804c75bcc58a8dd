#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "minkowski/oscillatory.hpp"

using namespace minkowski;

namespace {

// int_0^1 g(a/x, b x) dx written as int_1^inf g(a y, b/y) y^-2 dy, fixed
// 20-point panels of length pi/a out to Y, then one integration by parts
// for the rest (error O(Y^-3)).
template <class G>
double y_substitution_oracle(G g, double a, double b, double Y = 2e4) {
  using boost::math::quadrature::gauss;
  const double h = pi / a;
  const long panels = static_cast<long>(std::ceil((Y - 1) / h));
  double s = 0;
  for (long k = 0; k < panels; ++k) {
    const double lo = 1 + k * h;
    s += gauss<double, 20>::integrate([&](double y) { return g(a * y, b / y) / (y * y); }, lo, lo + h);
  }
  const double end = 1 + panels * h;
  // g(ay, b/y) ~ cos(ay) c(b/y) for the integrands used below; the leading tail term
  // int_end^inf cos(a y) c / y^2 dy ~ -sin(a end) c / (a end^2)
  s += -g(a * end - pi / 2, b / end) / (a * end * end);
  return s;
}

}  // namespace

TEST(PIntegral, ClosedForms) {
  EXPECT_EQ(p_integral(0, 0).value, 1.0);
  EXPECT_NEAR(p_integral(0, 5).value, std::sin(5.0) / 5, 1e-16);
}

TEST(PIntegral, StationaryPhaseAt1And100) {
  const auto r = p_integral(1, 100, 1e-10);
  const auto s = stationary_phase_estimate(1, 100);
  EXPECT_NEAR(r.value, s.value, 0.1 * std::abs(r.value));
  ASSERT_TRUE(r.stationary_point.has_value());
  EXPECT_DOUBLE_EQ(*r.stationary_point, 0.1);
}

TEST(PIntegral, SubstitutionOracle) {
  for (auto [a, b] : {std::pair{1.0, 3.0}, {two_pi, 0.0}, {4 * pi, -two_pi}, {2.0, 20.0}, {6 * pi, 6 * pi}}) {
    const auto r = p_integral(a, b, 1e-11);
    const auto s = p_integral_substitution(a, b, 1e-11);
    EXPECT_NEAR(r.value, s.value, 1e-8) << a << " " << b;
    const double o = y_substitution_oracle([](double u, double v) { return std::cos(u + v); }, a, b);
    EXPECT_NEAR(r.value, o, 1e-8) << a << " " << b;
  }
}

TEST(PIntegral, BoundedByOne) {
  for (double a : {0.1, 1.0, 10.0, 300.0})
    for (double b : {-1000.0, -20.0, 0.0, 3.0, 50.0, 4000.0}) EXPECT_LE(std::abs(p_integral(a, b).value), 1.0);
}

TEST(PIntegral, ToleranceSelfConsistency) {
  for (auto [a, b] : {std::pair{1.0, 100.0}, {10.0, -300.0}, {two_pi, 2000 * pi}}) {
    const double tol = 1e-8;
    const auto r1 = p_integral(a, b, tol), r2 = p_integral(a, b, tol / 10);
    EXPECT_LE(std::abs(r1.value - r2.value), 2 * tol);
    EXPECT_LE(r1.error_estimate, tol);
  }
}

TEST(PIntegral, Preconditions) {
  EXPECT_THROW(p_integral(-1, 2), std::domain_error);
  EXPECT_THROW(p_integral(std::nan(""), 2), std::domain_error);
  EXPECT_FALSE(p_integral(1, 0.5).stationary_point.has_value());
  EXPECT_FALSE(p_integral(1, -50).stationary_point.has_value());
}

TEST(TailIntegral, Basics) {
  EXPECT_EQ(tail_integral(1, two_pi, 1).value, 0.0);
  EXPECT_NEAR(tail_integral(1, two_pi, 0).value, p_integral(1, two_pi).value, 1e-12);
  EXPECT_NEAR(tail_integral(0, 3, 0.25).value, (std::sin(3.0) - std::sin(0.75)) / 3, 1e-15);
  EXPECT_THROW(tail_integral(1, 7, 1.5), std::domain_error);
}

TEST(TailIntegral, AdditiveOverEps) {
  // int_e^1 = int_0^1 - int_0^e, the latter by rescaling x = e u:
  // int_0^e cos(b x + a/x) dx = e int_0^1 cos(b e u + (a/e)/u) du
  const double a = 2, b = 30, e = 0.3;
  const double rescaled = e * p_integral(a / e, b * e, 1e-12).value;
  EXPECT_NEAR(tail_integral(a, b, e, 1e-12).value, p_integral(a, b, 1e-12).value - rescaled, 1e-10);
}

TEST(TailIntegral, LemmaBoundsWithScannedConstant) {
  const auto rep = lemma_scan({0.5, 1, 2}, {two_pi, 4 * pi, 8 * pi, 16 * pi, -two_pi, -10 * pi, -40 * pi}, {});
  const double C = std::max(rep.empirical_C_pos, rep.empirical_C_neg);
  EXPECT_LT(std::abs(tail_integral(1, two_pi, 0).value), C * 2 * std::pow(two_pi, -0.75) * 1.0000001);
  EXPECT_LT(std::abs(tail_integral(1, -10 * pi, 0).value), C * 2 / (10 * pi) * 1.0000001);
}

TEST(SupOverEps, MatchesDenseGrid) {
  // both branches; for b < 0 every extremum lies below the cos_integral_parts split point
  for (double b : {40.0, -20.0, -300.0}) {
    const double a = 1;
    const auto s = sup_over_eps(a, b, 1e-11);
    double grid = 0;
    for (int k = 0; k <= 4000; ++k) grid = std::max(grid, std::abs(tail_integral(a, b, k / 4000.0, 1e-11).value));
    EXPECT_GE(s.sup, grid - 1e-9) << b;
    EXPECT_LT(s.sup - grid, 1e-4) << b;
  }
}

TEST(StationaryPhase, ConvergesAlongB) {
  double prev = 1e9;
  for (double b : {1e2, 1e3, 1e4}) {
    const double exact = p_integral(1, b, 1e-12).value;
    const double est = stationary_phase_estimate(1, b).value;
    const double rel = std::abs(est - exact) / std::abs(exact);
    EXPECT_LT(rel, prev) << b;
    prev = rel;
  }
}

TEST(StationaryPhase, AmplitudeExponent) {
  const double r = stationary_amplitude(1, 16 * 500) / stationary_amplitude(1, 500);
  EXPECT_NEAR(r / std::pow(16.0, -0.75), 1.0, 0.05);
}

TEST(StationaryPhase, ReportsSaddleAndRejectsTransition) {
  const auto s = stationary_phase_estimate(2, 50);
  ASSERT_TRUE(s.stationary_point.has_value());
  EXPECT_DOUBLE_EQ(*s.stationary_point, std::sqrt(2.0 / 50));
  EXPECT_EQ(s.method, OscillatoryMethod::stationary_phase);
  EXPECT_THROW(stationary_phase_estimate(5, 5), std::domain_error);
  EXPECT_THROW(stationary_phase_estimate(5, 2), std::domain_error);
}

TEST(ProductToSum, HalfSumMatchesProductOracle) {
  for (auto [a, b] : {std::pair{two_pi, two_pi}, {two_pi, 6 * pi}, {4 * pi, two_pi}}) {
    const double half = 0.5 * (p_integral(a, b, 1e-12).value + p_integral(a, -b, 1e-12).value);
    const double prod = y_substitution_oracle([](double u, double v) { return std::cos(u) * std::cos(v); }, a, b);
    EXPECT_NEAR(half, prod, 1e-8) << a << " " << b;
  }
}

TEST(LemmaScan, ConstantAboveOneAndStable) {
  const std::vector<double> a_grid{0.25, 0.5, 1, 2, 4};
  const auto coarse = lemma_scan(a_grid, log_grid(two_pi, 2e3, 4), {});
  const auto fine = lemma_scan(a_grid, log_grid(two_pi, 2e3, 8), {});
  EXPECT_GT(coarse.empirical_C_pos, 1.0);
  EXPECT_LT(std::abs(fine.empirical_C_pos - coarse.empirical_C_pos) / fine.empirical_C_pos, 0.05);
  EXPECT_GE(fine.empirical_C_pos, coarse.empirical_C_pos - 1e-12);
}

TEST(LemmaScan, NegativeBranchBounded) {
  std::vector<double> b;
  for (double v : log_grid(two_pi, 1e4, 4)) b.push_back(-v);
  const auto rep = lemma_scan({0.5, 1, 3}, b, {});
  EXPECT_EQ(rep.empirical_C_pos, 0.0);
  EXPECT_GT(rep.empirical_C_neg, 0.0);
  EXPECT_LT(rep.empirical_C_neg, 3.0);
}

TEST(LemmaScan, EpsGridNeverExceedsExactSup) {
  const auto exact = lemma_scan({1}, {20, -20}, {});
  const auto grid = lemma_scan({1}, {20, -20}, {0, 0.1, 0.3, 0.5, 0.9});
  EXPECT_LE(grid.empirical_C_pos, exact.empirical_C_pos + 1e-9);
  EXPECT_LE(grid.empirical_C_neg, exact.empirical_C_neg + 1e-9);
  EXPECT_THROW(lemma_scan({1}, {3}, {}), std::domain_error);
}

TEST(LemmaScan, PlateauBetweenBAnd16B) {
  // positive branch, a = 1/2: window maxima of the b^{3/4}-normalized ratio
  const auto p = lemma_plateau(0.5, 64 * pi, 64 * pi * 64, 2, 32);
  ASSERT_FALSE(p.empty());
  for (const auto& q : p) EXPECT_LT(q.rel_change, 0.10) << q.B;
}
