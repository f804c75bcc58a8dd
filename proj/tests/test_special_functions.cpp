#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>

#include "minkowski/special_functions.hpp"

using namespace minkowski;

namespace {

// plain double power series, only trusted for small u
double j0_series_oracle(double u) {
  long double term = 1, sum = 1, q = (long double)u * u / 4;
  for (int k = 1; k < 80; ++k) {
    term *= -q / ((long double)k * k);
    sum += term;
  }
  return static_cast<double>(sum);
}

double fresnel_c_oracle(double u) {
  using boost::math::quadrature::gauss_kronrod;
  double s = 0;
  const int panels = std::max(1, static_cast<int>(std::ceil(u * u)));
  for (int k = 0; k < panels; ++k) {
    const double a = u * k / panels, b = u * (k + 1) / panels;
    s += gauss_kronrod<double, 31>::integrate([](double t) { return std::cos(pi * t * t / 2); }, a, b, 8, 1e-15);
  }
  return s;
}

double fresnel_s_oracle(double u) {
  using boost::math::quadrature::gauss_kronrod;
  double s = 0;
  const int panels = std::max(1, static_cast<int>(std::ceil(u * u)));
  for (int k = 0; k < panels; ++k) {
    const double a = u * k / panels, b = u * (k + 1) / panels;
    s += gauss_kronrod<double, 31>::integrate([](double t) { return std::sin(pi * t * t / 2); }, a, b, 8, 1e-15);
  }
  return s;
}

}  // namespace

TEST(BesselJ, ValuesAtZero) {
  EXPECT_EQ(bessel_j0(0), 1.0);
  EXPECT_EQ(bessel_j1(0), 0.0);
  EXPECT_EQ(bessel_j2(0), 0.0);
}

TEST(BesselJ, FirstRootOfJ0FromSeriesBisection) {
  double lo = 2, hi = 3;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (j0_series_oracle(mid) > 0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(bessel_j0(0.5 * (lo + hi)), 0.0, 1e-12);
}

TEST(BesselJ, AgreesWithBoostOverRange) {
  for (int nu = 0; nu <= 2; ++nu) {
    const auto order = static_cast<BesselOrder>(nu);
    for (double u = 0; u <= 1e6; u = (u < 50 ? u + 0.37 : u * 1.21)) {
      const double ref = boost::math::cyl_bessel_j(nu, u);
      EXPECT_NEAR(bessel_j(order, u), ref, 1e-13) << "nu=" << nu << " u=" << u;
    }
  }
}

TEST(BesselJ, SeriesAndHankelOverlap) {
  for (double u = bessel_series_limit - 3; u < bessel_series_limit + 3; u += 0.1)
    EXPECT_NEAR(detail::bessel_j_series(0, u), detail::bessel_j_hankel(0, u), 1e-13) << u;
}

TEST(BesselJ, BoundedAndDecaying) {
  double sup = 0;
  for (double u = 10; u <= 1e5; u *= 1.003) {
    for (int nu = 0; nu <= 2; ++nu) EXPECT_LE(std::abs(bessel_j(static_cast<BesselOrder>(nu), u)), 1.0);
    sup = std::max(sup, std::abs(bessel_j0(u)) * std::sqrt(u));
  }
  EXPECT_LE(sup, 1.0);
}

TEST(BesselJ, RecurrenceJ0PlusJ2) {
  for (double u = 0.1; u <= 1e4; u *= 1.07)
    EXPECT_NEAR(bessel_j0(u) + bessel_j2(u), 2 / u * bessel_j1(u), 1e-10) << u;
}

TEST(BesselJ, RejectsNonFinite) {
  EXPECT_THROW(bessel_j0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_THROW(bessel_j1(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(Fresnel, ZeroAndOdd) {
  const auto z = fresnel(0);
  EXPECT_EQ(z.C, 0.0);
  EXPECT_EQ(z.S, 0.0);
  const auto p = fresnel(1), m = fresnel(-1);
  EXPECT_EQ(m.C, -p.C);
  EXPECT_EQ(m.S, -p.S);
}

TEST(Fresnel, AgreesWithQuadrature) {
  for (double u : {0.1, 0.5, 1.0, 2.0, 2.49, 2.51, 3.3, 5.0, 7.5}) {
    const auto f = fresnel(u);
    EXPECT_NEAR(f.C, fresnel_c_oracle(u), 1e-12) << u;
    EXPECT_NEAR(f.S, fresnel_s_oracle(u), 1e-12) << u;
  }
}

TEST(Fresnel, LargeArgumentLimit) {
  const auto f = fresnel(50);
  EXPECT_NEAR(f.C, 0.5, 1e-3);
  EXPECT_NEAR(f.C, fresnel_c_oracle(50), 1e-11);
  EXPECT_NEAR(f.S, 0.5, 1e-2);
}

TEST(KImag, TauZeroIsK0) {
  const double k = bessel_k_imag(0, 1);
  EXPECT_NEAR(k, boost::math::cyl_bessel_k(0, 1.0), 1e-15);
  boost::math::quadrature::exp_sinh<double> es;
  const double direct = es.integrate([](double t) { return std::exp(-std::cosh(t)); });
  EXPECT_NEAR(k, direct, 1e-14);
}

TEST(KImag, AgreesWithBoostAtSmallTau) {
  // boost has no imaginary order; check tau -> 0 continuity and a real order through the same integral
  const double h = 1e-6;
  EXPECT_NEAR(bessel_k_imag(h, 0.7), boost::math::cyl_bessel_k(0, 0.7), 1e-11);
}

TEST(KImag, PrecisionFloorEnforced) {
  EXPECT_EQ(k_imag_min_bits(0), 53);
  EXPECT_THROW(bessel_k_imag(40, 0.5, Precision{64}), PrecisionError);
  EXPECT_NO_THROW(bessel_k_imag(40, 0.5, Precision{256}));
  EXPECT_THROW(Precision{32}, std::invalid_argument);
  EXPECT_THROW(bessel_k_imag(1, 0), std::domain_error);
  EXPECT_THROW(bessel_k_imag(-1, 1), std::domain_error);
}

TEST(KImag, PrecisionIndependent) {
  const double a = bessel_k_imag(12, 0.8, Precision{256});
  const double b = bessel_k_imag(12, 0.8, Precision{512});
  EXPECT_NEAR(a, b, 1e-30);
  EXPECT_TRUE(std::isfinite(a));
}

TEST(KImag, LeadingAsymptoticAtTau10) {
  const double k = bessel_k_imag(10, 0.5, Precision{256});
  EXPECT_NEAR(k / k_asymptotic_leading(10, 0.5), 1.0, 0.2);
}

TEST(KImag, AsymptoticErrorDecreasesWithTau) {
  auto rel = [](double tau) {
    const double k = bessel_k_imag(tau, 0.5, Precision{256});
    return std::abs(k - k_asymptotic_leading(tau, 0.5)) / (std::exp(-pi * tau / 2) / std::sqrt(tau));
  };
  EXPECT_LT(rel(20), rel(10));
}

TEST(KImag, AsymptoticSignAtTau15) {
  const double k = bessel_k_imag(15, 1, Precision{256});
  ASSERT_GT(std::abs(k) * std::exp(pi * 15 / 2), 0.05);  // away from a zero
  EXPECT_EQ(std::signbit(k), std::signbit(k_asymptotic_leading(15, 1)));
}

TEST(KImag, ScaledValueBounded) {
  // the envelope is the leading amplitude sqrt(2 pi / tau), which exceeds 1 for tau < 2 pi
  double sup = 0;
  for (double tau = 5; tau <= 25; tau += 0.5)
    for (double x = 0.1; x <= 1.0001; x += 0.05) {
      const double v = std::abs(bessel_k_imag(tau, x, Precision{256})) * std::exp(pi * tau / 2);
      EXPECT_LE(v, 1.02 * std::sqrt(two_pi / tau)) << tau << " " << x;
      if (tau >= two_pi) {
        EXPECT_LE(v, 1.0) << tau << " " << x;
      }
      sup = std::max(sup, v);
    }
  EXPECT_LT(sup, 1.13);
}

TEST(KAsymptotic, DisplayedFormulaZeros) {
  const double tau = 12;
  for (int k = 1; k <= 3; ++k) {
    // tau log(e x / 2 tau) = -k pi
    const double x = 2 * tau / std::numbers::e * std::exp(-k * pi / tau);
    const double scale = std::exp(-pi * tau / 2) / std::sqrt(two_pi * tau);
    EXPECT_NEAR(k_asymptotic(tau, x) / scale, 0.0, 1e-12);
  }
  EXPECT_THROW(k_asymptotic(4.9, 1), std::domain_error);
  EXPECT_THROW(k_asymptotic(10, -1), std::domain_error);
}
