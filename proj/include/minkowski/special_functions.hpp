#pragma once
// J0/J1/J2, Fresnel integrals and K_{i tau}(x) at configurable precision.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace minkowski {

#if defined(__SIZEOF_FLOAT128__) && !defined(MINKOWSKI_NO_FLOAT128)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

namespace detail {
// pi to ~32 digits as a double-double, enough for the series below
inline wide_real wide_pi() {
  return wide_real(3.141592653589793116) + wide_real(1.2246467991473532e-16);
}
inline wide_real wabs(wide_real x) { return x < 0 ? -x : x; }
}  // namespace detail

struct Precision {
  long significand_bits = 256;

  Precision() = default;
  explicit Precision(long bits) : significand_bits(bits) {
    if (bits < 53) throw std::invalid_argument("Precision: significand_bits must be >= 53");
  }
};

enum class BesselOrder : int { j0 = 0, j1 = 1, j2 = 2 };

// ---------------------------------------------------------------------------
// Bessel J_nu, nu in {0,1,2}
// ---------------------------------------------------------------------------

// below this the power series is summed in wide precision, above it the
// Hankel expansion is used
inline constexpr double bessel_series_limit = 25.0;

namespace detail {

inline double bessel_j_series(int nu, double u) {
  const wide_real h = wide_real(u) / 2;
  const wide_real q = h * h;
  wide_real term = 1;
  for (int i = 0; i < nu; ++i) term *= h / (i + 1);
  wide_real sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (wide_real(k) * wide_real(k + nu));
    sum += term;
    if (wabs(term) < wide_real(1e-40) && k > u) break;
  }
  return double(sum);
}

// J_nu(u) = sqrt(2/(pi u)) (P cos chi - Q sin chi), chi = u - (nu/2 + 1/4) pi
inline double bessel_j_hankel(int nu, double u) {
  const double mu = 4.0 * nu * nu;
  double P = 1.0, Q = 0.0, t = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = t * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * u);
    if (std::abs(next) > std::abs(t) && k > 2) break;  // asymptotic series turned around
    t = next;
    switch (k % 4) {
      case 1: Q += t; break;
      case 2: P -= t; break;
      case 3: Q -= t; break;
      case 0: P += t; break;
    }
    if (std::abs(t) < 1e-18) break;
  }
  // cos(u - theta), sin(u - theta) with theta = (nu/2 + 1/4) pi, exact rotations
  const double c = std::cos(u), s = std::sin(u);
  const double r = std::sqrt(0.5);
  double cchi, schi;
  switch (nu) {
    case 0: cchi = r * (c + s); schi = r * (s - c); break;   // theta = pi/4
    case 1: cchi = r * (s - c); schi = -r * (c + s); break;  // theta = 3pi/4
    default: cchi = -r * (c + s); schi = r * (c - s); break; // theta = 5pi/4
  }
  return std::sqrt(2.0 / (pi * u)) * (P * cchi - Q * schi);
}

}  // namespace detail

inline double bessel_j(BesselOrder order, double u) {
  require_finite(u, "bessel_j");
  if (u < 0) throw std::domain_error("bessel_j: negative argument");
  const int nu = static_cast<int>(order);
  if (u == 0) return nu == 0 ? 1.0 : 0.0;
  if (u <= bessel_series_limit) return detail::bessel_j_series(nu, u);
  return detail::bessel_j_hankel(nu, u);
}

inline double bessel_j0(double u) { return bessel_j(BesselOrder::j0, u); }
inline double bessel_j1(double u) { return bessel_j(BesselOrder::j1, u); }
inline double bessel_j2(double u) { return bessel_j(BesselOrder::j2, u); }

// ---------------------------------------------------------------------------
// Fresnel integrals C(u), S(u) with the cos(pi t^2/2) normalization
// ---------------------------------------------------------------------------

struct FresnelPair {
  double C;
  double S;
};

inline FresnelPair fresnel(double u) {
  require_finite(u, "fresnel");
  const double ax = std::abs(u);
  double C, S;
  if (ax <= 2.5) {
    const wide_real wu = wide_real(ax);
    const wide_real t = detail::wide_pi() / 2 * wu * wu;
    wide_real p = 1, c = 0, s = 0;  // p = t^n / n!
    for (int n = 0; n < 200; ++n) {
      if (n > 0) p *= t / n;
      const wide_real term = p * wu / (2 * n + 1);
      switch (n % 4) {
        case 0: c += term; break;
        case 1: s += term; break;
        case 2: c -= term; break;
        case 3: s -= term; break;
      }
      if (n > t && term < wide_real(1e-38)) break;
    }
    C = double(c);
    S = double(s);
  } else {
    // complementary error function continued fraction (modified Lentz)
    using cd = std::complex<double>;
    const double pix2 = pi * ax * ax;
    cd b(1.0, -pix2);
    cd cc(1e300, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    int n = -1;
    for (int k = 2; k < 2000; ++k) {
      n += 2;
      const double a = -double(n) * (n + 1);
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const cd del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-17) break;
    }
    h *= cd(ax, -ax);
    // cos/sin of pi x^2 / 2 with the argument reduced exactly in x^2 mod 4
    const double sq = ax * ax;
    const double sq_lo = std::fma(ax, ax, -sq);
    const double half = 0.5 * pi * (std::fmod(sq, 4.0) + sq_lo);
    const cd rot(std::cos(half), std::sin(half));
    const cd cs = cd(0.5, 0.5) * (1.0 - rot * h);
    C = cs.real();
    S = cs.imag();
  }
  if (u < 0) {
    C = -C;
    S = -S;
  }
  return {C, S};
}

// ---------------------------------------------------------------------------
// Multiprecision scalar (thin RAII over mpfr_t)
// ---------------------------------------------------------------------------

class MpReal {
 public:
  explicit MpReal(long bits = 256) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  MpReal(double x, long bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long bits() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 40) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend MpReal operator-(const MpReal& a, const MpReal& b) {
    MpReal r(std::max(a.bits(), b.bits()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator+(const MpReal& a, const MpReal& b) {
    MpReal r(std::max(a.bits(), b.bits()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  MpReal& operator*=(double s) {
    mpfr_mul_d(v_, v_, s, MPFR_RNDN);
    return *this;
  }

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// K_{i tau}(x) = int_0^inf exp(-x cosh t) cos(tau t) dt
// ---------------------------------------------------------------------------

inline long k_imag_min_bits(double tau) {
  return 53 + static_cast<long>(std::ceil(pi * tau / (2.0 * std::log(2.0))));
}

// Evaluator for a fixed tau. The trapezoid nodes, cos(tau t_k) and cosh(t_k)
// are cached, so repeated x-evaluations only pay for the exponentials.
// Not thread-safe; use one instance per thread.
class KernelImagOrder {
 public:
  KernelImagOrder(double tau, Precision prec = Precision{})
      : tau_(tau), bits_(prec.significand_bits), work_(prec.significand_bits + 32) {
    require_finite(tau, "bessel_k_imag");
    if (tau < 0) throw std::domain_error("bessel_k_imag: tau must be nonnegative");
    if (bits_ < k_imag_min_bits(tau))
      throw PrecisionError("bessel_k_imag: " + std::to_string(bits_) +
                           " bits cannot resolve exp(-pi tau/2) at tau=" + std::to_string(tau) +
                           "; need >= " + std::to_string(k_imag_min_bits(tau)));
    // The integrand is analytic in |Im t| < pi/2 and grows like exp(tau |Im t|)
    // there, so the trapezoid error is about exp(pi tau/2 - pi^2/h).
    const double target = (bits_ + 40) * std::log(2.0);
    h_ = pi * pi / (pi * tau + target);
  }

  double tau() const { return tau_; }
  long bits() const { return bits_; }
  double step() const { return h_; }

  MpReal value(double x) {
    require_finite(x, "bessel_k_imag");
    if (!(x > 0)) throw std::domain_error("bessel_k_imag: x must be positive");
    // exp(-x cosh t) < 2^-(bits+40) once cosh t exceeds this
    const double cut = ((bits_ + 40) * std::log(2.0) + 8.0) / x;
    extend_nodes(std::acosh(std::max(cut, 1.0)) + h_);

    MpReal sum(work_), term(work_);
    mpfr_set_zero(sum.get(), 1);
    for (std::size_t k = 0; k < cosh_.size(); ++k) {
      mpfr_mul_d(term.get(), cosh_[k].get(), -x, MPFR_RNDN);
      if (mpfr_cmp_d(term.get(), -cut * x) < 0) break;
      mpfr_exp(term.get(), term.get(), MPFR_RNDN);
      mpfr_mul(term.get(), term.get(), cos_[k].get(), MPFR_RNDN);
      if (k == 0) mpfr_div_ui(term.get(), term.get(), 2, MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    mpfr_mul_d(sum.get(), sum.get(), h_, MPFR_RNDN);
    MpReal out(bits_);
    mpfr_set(out.get(), sum.get(), MPFR_RNDN);
    return out;
  }

  // Absolute error guaranteed by construction of the step and cutoff.
  double error_bound() const { return std::ldexp(1.0, static_cast<int>(-bits_ + 10)); }

 private:
  void extend_nodes(double t_max) {
    while (cosh_.size() * h_ <= t_max) {
      const std::size_t k = cosh_.size();
      MpReal t(work_), c(work_), ch(work_);
      mpfr_set_d(t.get(), h_, MPFR_RNDN);
      mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_cosh(ch.get(), t.get(), MPFR_RNDN);
      mpfr_mul_d(c.get(), t.get(), tau_, MPFR_RNDN);
      mpfr_cos(c.get(), c.get(), MPFR_RNDN);
      cosh_.push_back(std::move(ch));
      cos_.push_back(std::move(c));
    }
  }

  double tau_;
  long bits_;
  long work_;
  double h_;
  std::vector<MpReal> cosh_;
  std::vector<MpReal> cos_;
};

inline MpReal bessel_k_imag_mp(double tau, double x, Precision prec = Precision{}) {
  KernelImagOrder k(tau, prec);
  return k.value(x);
}

inline double bessel_k_imag(double tau, double x, Precision prec = Precision{}) {
  return bessel_k_imag_mp(tau, x, prec).to_double();
}

// The leading asymptotic exactly as displayed in the source formula.
inline double k_asymptotic(double tau, double x) {
  require_finite(tau, "k_asymptotic");
  require_finite(x, "k_asymptotic");
  if (tau < 5) throw std::domain_error("k_asymptotic: tau < 5 is outside the asymptotic regime");
  if (!(x > 0)) throw std::domain_error("k_asymptotic: x must be positive");
  return -std::exp(-pi * tau / 2) / std::sqrt(two_pi * tau) *
         std::sin(tau * std::log(std::numbers::e * x / (2 * tau)));
}

// The leading term with the standard amplitude sqrt(2 pi / tau) and the
// -pi/4 phase shift, which is what the quadrature actually approaches.
inline double k_asymptotic_leading(double tau, double x) {
  require_finite(tau, "k_asymptotic_leading");
  require_finite(x, "k_asymptotic_leading");
  if (!(tau > 0) || !(x > 0)) throw std::domain_error("k_asymptotic_leading: tau, x must be positive");
  return -std::sqrt(two_pi / tau) * std::exp(-pi * tau / 2) *
         std::sin(tau * std::log(std::numbers::e * x / (2 * tau)) - pi / 4);
}

}  // namespace minkowski
