#pragma once
// I(tau) = int_0^1 K_{i tau}(x) f(x) dx/x for test functions supported in
// [1/2, 1], and the window scan showing that e^{pi tau/2} tau^2 |I(tau)| is
// unbounded, so the estimate O(e^{-pi tau/2} tau^{-N}) fails at N = 2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "parallel.hpp"
#include "quadrature_rules.hpp"
#include "special_functions.hpp"

namespace minkowski {

enum class TestFunctionTag { bump, polynomial_cutoff };

inline std::string to_string(TestFunctionTag t) {
  return t == TestFunctionTag::bump ? "bump" : "polynomial-cutoff";
}

// With y = (x - x_lo)/(x_hi - x_lo) on the support:
//   bump               16 y^2 (1-y)^2, C^1 across both ends
//   polynomial-cutoff  y^power, vanishes to order `power` at x_lo, equals 1 at x_hi
// The cutoff is the default: the boundary value at x = 1 is what leaves a
// tau^{-3/2} term; a function vanishing at both ends decays faster.
struct TestFunction {
  TestFunctionTag tag = TestFunctionTag::polynomial_cutoff;
  double x_lo = 0.5, x_hi = 1.0;
  int power = 2;

  // continuous derivatives of the zero extension across the support ends (-1: jump)
  int smoothness() const { return tag == TestFunctionTag::bump ? 1 : -1; }

  double operator()(double x) const {
    if (x < x_lo || x > x_hi) return 0;
    const double y = (x - x_lo) / (x_hi - x_lo);
    if (tag == TestFunctionTag::bump) return 16 * y * y * (1 - y) * (1 - y);
    return std::pow(y, power);
  }

  static TestFunction bump(double lo = 0.5, double hi = 1.0) { return {TestFunctionTag::bump, lo, hi, 4}; }
  static TestFunction cutoff(int power = 2, double lo = 0.5, double hi = 1.0) {
    return {TestFunctionTag::polynomial_cutoff, lo, hi, power};
  }
};

inline void check_support(double lo, double hi) {
  if (!(lo > 0 && lo < hi && hi <= 1)) throw std::domain_error("test function support must lie in (0, 1]");
}

struct NaylorValue {
  double tau = 0;
  double value = 0;
  double error_estimate = 0;
  long kernel_evaluations = 0;
};

namespace detail {

// int_lo^hi kern(x) f(x) dx/x as int kern(e^u) f(e^u) du: the phase
// tau log x is linear in u, so equal u-panels hold equal numbers of oscillations.
// GL20 against GL10 on the same panels for the error.
template <class Kernel, class F>
NaylorValue log_panel_integral(double tau, Kernel&& kern, F&& f, double lo, double hi) {
  const double ulo = std::log(lo), uhi = std::log(hi);
  const long P = std::max<long>(2, static_cast<long>(std::ceil(tau * (uhi - ulo) / pi)) + 1);
  const auto& g20 = gauss_legendre<20>();
  const auto& g10 = gauss_legendre<10>();
  const double h = (uhi - ulo) / double(P);
  NaylorValue r;
  r.tau = tau;
  CompensatedSum<double> s20, s10;
  for (long p = 0; p < P; ++p) {
    const double c = ulo + (p + 0.5) * h, hh = 0.5 * h;
    auto node = [&](double t) {
      const double x = std::exp(c + hh * t);
      ++r.kernel_evaluations;
      return kern(x) * f(x);
    };
    for (std::size_t i = 0; i < g20.size(); ++i) s20.add(hh * g20.w[i] * node(g20.x[i]));
    for (std::size_t i = 0; i < g10.size(); ++i) s10.add(hh * g10.w[i] * node(g10.x[i]));
  }
  r.value = s20.value();
  r.error_estimate = std::abs(s20.value() - s10.value());
  return r;
}

}  // namespace detail

// the signal scale e^{-pi tau/2} tau^{-1/2}
inline double naylor_scale(double tau) { return std::exp(-pi * tau / 2) / std::sqrt(tau); }

// general f supported in [lo, hi]; the kernel in multiprecision
inline NaylorValue naylor_integral(const std::function<double(double)>& f, double lo, double hi, double tau,
                                   Precision prec = Precision{}) {
  require_finite(tau, "naylor_integral");
  if (!(tau > 0)) throw std::domain_error("naylor_integral: tau must be positive");
  check_support(lo, hi);
  KernelImagOrder K(tau, prec);  // throws PrecisionError below the floor
  auto r = detail::log_panel_integral(tau, [&](double x) { return K.value(x).to_double(); }, f, lo, hi);
  // kernel error per node, times the u-length and sup |f| <= 1 scale, plus double rounding
  const double ulen = std::log(hi / lo);
  r.error_estimate += K.error_bound() * ulen + 1e-15 * naylor_scale(tau) * ulen;
  return r;
}

inline NaylorValue naylor_integral(const TestFunction& f, double tau, Precision prec = Precision{}) {
  return naylor_integral(std::function<double(double)>(f), f.x_lo, f.x_hi, tau, prec);
}

// the same integral with K_{i tau} replaced by its leading asymptotic
inline NaylorValue naylor_integral_asymptotic(const TestFunction& f, double tau) {
  check_support(f.x_lo, f.x_hi);
  if (!(tau > 0)) throw std::domain_error("naylor_integral_asymptotic: tau must be positive");
  return detail::log_panel_integral(tau, [&](double x) { return k_asymptotic_leading(tau, x); }, f, f.x_lo,
                                    f.x_hi);
}

struct DecayWindow {
  double T = 0;  // window [T, 2T]
  double max_n0 = 0, max_n1 = 0, max_n2 = 0;  // max e^{pi tau/2} tau^N |I|, N = 1/2, 1, 2
  double max_n32 = 0;                         // N = 3/2
  double tau_at_max_n2 = 0;
  double max_n2_asymptotic = 0;  // same with the asymptotic-substitution values
  double max_relative_error = 0;  // error_estimate / (e^{-pi tau/2} tau^{-1/2})
};

struct DecayScanReport {
  TestFunction f;
  long precision_bits = 0;
  int samples_per_window = 0;
  std::vector<double> tau;
  std::vector<double> values, errors, asymptotic;
  std::vector<DecayWindow> windows;
  std::vector<double> growth_n1, growth_n2, growth_n32;  // consecutive window ratios
};

// windows [T, 2T] for T in T_list, midpoint sampling; phase rate in tau is
// about log(2 tau), so samples_per_window must exceed T log(2T)/pi by a margin
inline DecayScanReport decay_scan(const TestFunction& f, const std::vector<double>& T_list, int samples_per_window,
                                  Precision prec = Precision{256}, unsigned threads = default_threads()) {
  if (f.x_lo < 0.5) throw std::domain_error("decay_scan: f must vanish on [0, 1/2]");
  if (samples_per_window < 2) throw std::invalid_argument("decay_scan: samples_per_window >= 2");
  DecayScanReport rep;
  rep.f = f;
  rep.precision_bits = prec.significand_bits;
  rep.samples_per_window = samples_per_window;
  for (double T : T_list) {
    if (!(T > 0)) throw std::domain_error("decay_scan: window starts must be positive");
    const double need = T * std::log(4 * T) / pi;
    if (samples_per_window < need)
      throw std::invalid_argument("decay_scan: sampling too coarse for window at T=" + std::to_string(T));
    if (prec.significand_bits < k_imag_min_bits(2 * T))
      throw PrecisionError("decay_scan: precision too low for tau=" + std::to_string(2 * T));
    for (int j = 0; j < samples_per_window; ++j) rep.tau.push_back(T + T * (j + 0.5) / samples_per_window);
  }
  const std::size_t n = rep.tau.size();
  rep.values.resize(n);
  rep.errors.resize(n);
  rep.asymptotic.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto v = naylor_integral(f, rep.tau[i], prec);
    rep.values[i] = v.value;
    rep.errors[i] = v.error_estimate;
    rep.asymptotic[i] = naylor_integral_asymptotic(f, rep.tau[i]).value;
  });
  std::size_t i = 0;
  for (double T : T_list) {
    DecayWindow w;
    w.T = T;
    for (int j = 0; j < samples_per_window; ++j, ++i) {
      const double t = rep.tau[i];
      const double e = std::exp(pi * t / 2);
      const double a = e * std::abs(rep.values[i]);
      w.max_n0 = std::max(w.max_n0, a * std::sqrt(t));
      w.max_n1 = std::max(w.max_n1, a * t);
      w.max_n32 = std::max(w.max_n32, a * t * std::sqrt(t));
      if (a * t * t > w.max_n2) {
        w.max_n2 = a * t * t;
        w.tau_at_max_n2 = t;
      }
      w.max_n2_asymptotic = std::max(w.max_n2_asymptotic, e * std::abs(rep.asymptotic[i]) * t * t);
      w.max_relative_error = std::max(w.max_relative_error, rep.errors[i] / naylor_scale(t));
    }
    rep.windows.push_back(w);
  }
  for (std::size_t k = 1; k < rep.windows.size(); ++k) {
    rep.growth_n1.push_back(rep.windows[k].max_n1 / rep.windows[k - 1].max_n1);
    rep.growth_n2.push_back(rep.windows[k].max_n2 / rep.windows[k - 1].max_n2);
    rep.growth_n32.push_back(rep.windows[k].max_n32 / rep.windows[k - 1].max_n32);
  }
  return rep;
}

}  // namespace minkowski
