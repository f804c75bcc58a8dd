#pragma once
// Numerical checks of the identities: the integral functional equation
// through its absolutely convergent rewriting, the classical Bessel integral
// and the point-mass control, the series of the discrete functional
// equation, the Fourier series of ?(x) - x, and the partial-sum bounds. Each
// check returns a ResidualReport whose two sides come from different code
// paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "minkowski_core.hpp"
#include "nufft.hpp"
#include "oscillatory.hpp"
#include "parallel.hpp"
#include "special_functions.hpp"
#include "stieltjes_quadrature.hpp"

namespace minkowski {

struct TruncationBudget {
  std::string parameter;  // "X", "N", "eta", ...
  double value = 0;
  double tail_bound = 0;
};

struct ResidualReport {
  std::string identity;
  std::vector<std::pair<std::string, double>> parameters;
  cplx lhs{}, rhs{};
  double residual = 0;
  double quadrature_error = 0;
  TruncationBudget truncation;
  std::vector<std::pair<std::string, double>> diagnostics;

  double bound() const { return quadrature_error + truncation.tail_bound; }
  bool within_bound() const { return residual <= bound(); }
  double diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics)
      if (k == key) return v;
    return std::numeric_limits<double>::quiet_NaN();
  }
};

namespace detail {

inline ResidualReport make_report(std::string id, std::vector<std::pair<std::string, double>> params, cplx lhs,
                                  cplx rhs, double qerr, TruncationBudget tb) {
  ResidualReport r;
  r.identity = std::move(id);
  r.parameters = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.quadrature_error = qerr;
  r.truncation = std::move(tb);
  return r;
}

// Trapezoid sum on f[i0..i1] with Gregory end corrections of the given order.
template <class T>
T gregory(const std::vector<T>& f, std::size_t i0, std::size_t i1, double h, int order) {
  static const double c[] = {1. / 12, 1. / 24, 19. / 720, 3. / 160, 863. / 60480, 275. / 24192, 33953. / 3628800};
  if (i1 < i0 + static_cast<std::size_t>(order) + 1)
    throw std::invalid_argument("gregory: too few points for the correction order");
  CompensatedSum<T> s;
  s.add(0.5 * (f[i0] + f[i1]));
  for (std::size_t k = i0 + 1; k < i1; ++k) s.add(f[k]);
  std::vector<T> fw(f.begin() + i0, f.begin() + i0 + order + 1);
  std::vector<T> bw(f.begin() + i1 - order, f.begin() + i1 + 1);
  T corr{};
  for (int r = 1; r <= order; ++r) {
    for (std::size_t i = 0; i + 1 < fw.size(); ++i) fw[i] = fw[i + 1] - fw[i];
    fw.pop_back();
    for (std::size_t i = bw.size() - 1; i > 0; --i) bw[i] = bw[i] - bw[i - 1];
    bw.erase(bw.begin());
    corr += c[r - 1] * (bw.back() + ((r % 2) ? -fw[0] : fw[0]));
  }
  return h * (s.value() - corr);
}

// Neville extrapolation of (x_k, y_k) to x = 0
inline cplx extrapolate_to_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
  std::vector<cplx> p(y);
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
  return p[0];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Integral functional equation
// ---------------------------------------------------------------------------

// -2 s J_2(2 sqrt(st)) / t: the bracket J0 s/t - J2 s/t - J1 s^{1/2}/t^{3/2}
// after J0(u) + J2(u) = 2 J1(u)/u; no cancellation as t -> 0
inline double theorem1_kernel(double s, double t) {
  if (t == 0) return -s * s;
  return -2 * s * bessel_j2(2 * std::sqrt(s * t)) / t;
}

// the bracket exactly as displayed (loses digits for st << 1)
inline double theorem1_kernel_verbatim(double s, double t) {
  const double u = 2 * std::sqrt(s * t);
  return bessel_j0(u) * s / t - bessel_j2(u) * s / t - bessel_j1(u) * std::sqrt(s) / std::pow(t, 1.5);
}

// m(it) and mhat(t) on t = k dt, k = 0..X/dt, from one d?-rule valid up to
// frequency X (nonuniform FFT over its nodes). Cached per X.
struct MhatGrid {
  double X = 0, dt = 0;
  std::vector<cplx> mhat, m;
  std::vector<double> rule_x, rule_w;
  double rule_tol = 0;
  double nufft_error = 0;  // relative to sum |weights / x|

  // mhat at k * step, k = 0..count-1, same rule
  std::vector<cplx> mhat_samples(double step, long count) const {
    std::vector<double> w(rule_x.size());
    std::vector<cplx> c(rule_x.size());
    cplx csum = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = rule_x[j] * step;
      c[j] = rule_w[j] / cplx(0, rule_x[j]);
      csum += c[j];
    }
    auto F = nufft_type1(w, c, count);
    for (auto& v : F) v -= csum;
    return F;
  }
};

inline constexpr double theorem1_grid_step = 0.1;

inline const MhatGrid& mhat_grid(double X) {
  static std::mutex mtx;
  static std::map<double, std::unique_ptr<MhatGrid>> cache;
  std::lock_guard<std::mutex> lk(mtx);
  auto& slot = cache[X];
  if (slot) return *slot;
  auto g = std::make_unique<MhatGrid>();
  g->X = X;
  g->dt = theorem1_grid_step;
  g->rule_tol = 1e-11;
  const auto rule = build_measure_rule(X, mhat_hints(X), g->rule_tol);
  g->rule_x = rule.x;
  g->rule_w = rule.w;
  const long K = std::lround(X / g->dt) + 1;
  g->mhat = g->mhat_samples(g->dt, K);
  std::vector<double> w(rule.x.size());
  std::vector<cplx> c(rule.x.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = rule.x[j] * g->dt;
    c[j] = rule.w[j];
  }
  g->m = nufft_type1(w, c, K);
  g->nufft_error = 1e-13;
  slot = std::move(g);
  return *slot;
}

struct AFunctional {
  double s = 0, X = 0;
  cplx verbatim{};        // the absolutely convergent display at X, term by term
  cplx estimate{};        // i + (i/2)[int_0^X mhat K + mhat(inf) int_X^inf K]
  cplx integral{};        // int_0^X mhat(t) K_s(t) dt
  double quadrature_error = 0;
  double tail_estimate = 0;        // spread of `estimate` over X' in [X/2, X]
  double verbatim_constant = 0;    // C with |verbatim(X') - A| <= C X'^{-1/4} on the calibration range
  double verbatim_tail_bound = 0;  // C X^{-1/4}
};

// mhat(t) -> int_0^1 (-1/(ix)) d? = 5i/2 on average as t -> infinity
inline constexpr cplx mhat_limit{0.0, 2.5};

inline AFunctional a_functional(double s, double X) {
  require_finite(s, "a_functional");
  require_finite(X, "a_functional");
  if (!(s > 0)) throw std::domain_error("a_functional: s must be positive");
  if (!(X >= 1)) throw std::domain_error("a_functional: X must be at least 1");
  const auto& G = mhat_grid(X);
  const double dt = G.dt;
  const long K = static_cast<long>(G.mhat.size());
  const cplx I(0, 1);
  constexpr int order = 7;

  // [0, T0]: J2(2 sqrt(st)) turns at rate sqrt(s/t); a finer grid until that is slow
  long i0 = std::max<long>(order + 2, static_cast<long>(std::ceil(s * (dt / 0.15) * (dt / 0.15) / dt)));
  i0 = std::min(i0, K - 1 - order - 2);
  if (i0 < order + 2) throw std::domain_error("a_functional: X too small for the grid");
  const double T0 = i0 * dt;
  const long nf = std::max<long>(16 * (order + 2), static_cast<long>(std::ceil(T0 * s / 0.15)));
  const double hf = T0 / nf;
  const auto mf = G.mhat_samples(hf, nf + 1);
  std::vector<cplx> ff(nf + 1);
  for (long k = 0; k <= nf; ++k) ff[k] = mf[k] * theorem1_kernel(s, k * hf);
  const cplx fine = detail::gregory(ff, 0, nf, hf, order);
  const double fine_err = std::abs(fine - detail::gregory(ff, 0, nf, hf, order - 2));

  std::vector<cplx> fc(K);
  double kabs = 0;
  for (long k = i0; k < K; ++k) {
    const double kt = theorem1_kernel(s, k * dt);
    fc[k] = G.mhat[k] * kt;
    kabs += std::abs(kt) * dt;
  }
  auto integral_to = [&](long k) { return fine + detail::gregory(fc, i0, k, dt, order); };
  auto estimate_at = [&](long k, const cplx& integ) {
    const double Xk = k * dt, u = 2 * std::sqrt(s * Xk);
    return I + 0.5 * I * (integ + mhat_limit * (-2 * std::sqrt(s / Xk) * bessel_j1(u)));
  };
  auto verbatim_at = [&](long k, const cplx& integ) {
    const double Xk = k * dt, u = 2 * std::sqrt(s * Xk);
    return -I * bessel_j0(u) * G.m[k] + I - I * bessel_j1(u) * std::sqrt(s / Xk) * G.mhat[k] + 0.5 * I * integ;
  };

  AFunctional r;
  r.s = s;
  r.X = (K - 1) * dt;
  const long kX = K - 1;
  r.integral = integral_to(kX);
  r.estimate = estimate_at(kX, r.integral);
  r.verbatim = verbatim_at(kX, r.integral);
  const double coarse_err = std::abs(r.integral - fine - detail::gregory(fc, i0, kX, dt, order - 2));
  r.quadrature_error = fine_err + coarse_err + (G.rule_tol + G.nufft_error) * (kabs + s * s * T0) + 1e-14;

  // spread of the estimate over [X/2, X] as its truncation estimate
  for (int j = 0; j <= 32; ++j) {
    const long k = kX / 2 + (kX - kX / 2) * j / 32;
    if (k - i0 <= order + 1) continue;
    r.tail_estimate = std::max(r.tail_estimate, std::abs(estimate_at(k, integral_to(k)) - r.estimate));
  }
  // X^{-1/4} constant of the display, calibrated on X' in [100, 1000] (or [X/10, X])
  const double lo = X >= 1000 ? 100 : X / 10, hi = X >= 1000 ? 1000 : X;
  for (int j = 0; j <= 90; ++j) {
    const long k = std::lround((lo + (hi - lo) * j / 90.0) / dt);
    if (k - i0 <= order + 1 || k > kX) continue;
    const double Xk = k * dt;
    r.verbatim_constant =
        std::max(r.verbatim_constant, std::abs(verbatim_at(k, integral_to(k)) - r.estimate) * std::pow(Xk, 0.25));
  }
  r.verbatim_tail_bound = r.verbatim_constant * std::pow(r.X, -0.25);
  return r;
}

// i m(is) / (2 e^{2is} - e^{is}); |2e^{2is} - e^{is}| >= 1 for real s
inline QuadratureResult<cplx> theorem1_rhs(double s) {
  const auto m = laplace_transform(cplx(0, s), 1e-12);
  const cplx I(0, 1);
  const cplx den = 2.0 * std::exp(2.0 * I * s) - std::exp(I * s);
  return {I * m.value / den, m.error_estimate / std::abs(den), m.scheme, m.nodes_used};
}

inline ResidualReport theorem1_residual(double s, double X) {
  const auto a = a_functional(s, X);
  const auto rhs = theorem1_rhs(s);
  auto r = detail::make_report("theorem1", {{"s", s}, {"X", a.X}}, a.estimate, rhs.value,
                               a.quadrature_error + rhs.error_estimate, {"X", a.X, a.tail_estimate});
  const cplx I(0, 1);
  r.diagnostics = {{"verbatim_residual", std::abs(a.verbatim - rhs.value)},
                   {"verbatim_tail_bound", a.verbatim_tail_bound},
                   {"verbatim_constant", a.verbatim_constant},
                   {"denominator_modulus", std::abs(2.0 * std::exp(2.0 * I * s) - std::exp(I * s))}};
  return r;
}

// ---------------------------------------------------------------------------
// the classical integral x int_0^inf e^{ixt} J0(2 sqrt(st)) dt = i e^{-is/x}
// ---------------------------------------------------------------------------

// x int_0^inf e^{-pt} J0(2 sqrt(st)) dt = x e^{-s/p} / p,  p = eta - ix
inline cplx bessel_closed_form(double x, double s, double eta) {
  const cplx p(eta, -x);
  return x * std::exp(-s / p) / p;
}

// direct quadrature of x int_0^inf e^{(ix - eta)t} J0(2 sqrt(st)) dt
inline QuadratureResult<cplx> bessel_regularized_quadrature(double x, double s, double eta, double tol = 1e-11) {
  require_finite(x, "bessel_regularized_quadrature");
  if (!(eta > 0)) throw std::domain_error("bessel integral: eta must be positive (the eta = 0 integral only converges conditionally)");
  if (!(x > 0) || s < 0) throw std::domain_error("bessel integral: needs x > 0, s >= 0");
  const cplx q(-eta, x);
  auto f = [&](double t) { return std::exp(q * t) * bessel_j0(2 * std::sqrt(s * t)); };
  // |integrand| <= e^{-eta t}; stop where the remaining mass is below tol/10
  const double T = std::log(10.0 * x / (eta * tol)) / eta;
  cplx v = 0;
  double err = 0;
  long evals = 0;
  const double dens = 0.1 * tol / (x * T);
  for (double a = 0; a < T;) {
    const double rate = x + std::sqrt(s / std::max(a, 1.0 / std::max(s, 1.0)));
    const double b = std::min(T, a + pi / rate);
    // rounding of the phase x t + 2 sqrt(s t) sets the attainable relative accuracy
    const double noise = 4e-16 * (1 + x * b + 2 * std::sqrt(s * b));
    detail::adaptive_gl(f, a, b, dens, v, err, evals, noise);
    a = b;
  }
  err += std::exp(-eta * T) / eta;
  return {x * v, x * err, Scheme::farey_adaptive, evals};
}

inline ResidualReport bessel_identity_residual(double x, double s, double eta) {
  const auto q = bessel_regularized_quadrature(x, s, eta);
  return detail::make_report("bessel_identity", {{"x", x}, {"s", s}, {"eta", eta}}, q.value,
                             bessel_closed_form(x, s, eta), q.error_estimate, {"eta", eta, 0.0});
}

struct EtaExtrapolation {
  std::vector<double> etas;
  std::vector<cplx> values;
  cplx limit{};
  double error_estimate = 0;  // change when the largest eta is dropped
};

// polynomial extrapolation in eta of the quadrature values to eta = 0
inline EtaExtrapolation eta_extrapolate(double x, double s, const std::vector<double>& etas) {
  if (etas.size() < 2) throw std::invalid_argument("eta_extrapolate: need at least two eta values");
  EtaExtrapolation e;
  e.etas = etas;
  for (double eta : etas) e.values.push_back(bessel_regularized_quadrature(x, s, eta).value);
  e.limit = detail::extrapolate_to_zero(e.etas, e.values);
  const std::vector<double> xs(etas.begin() + 1, etas.end());
  const std::vector<cplx> ys(e.values.begin() + 1, e.values.end());
  e.error_estimate = std::abs(e.limit - detail::extrapolate_to_zero(xs, ys));
  return e;
}

inline ResidualReport bessel_limit_residual(double x, double s, const std::vector<double>& etas = {1e-1, 1e-2, 1e-3}) {
  const auto e = eta_extrapolate(x, s, etas);
  const cplx I(0, 1);
  auto r = detail::make_report("bessel_limit", {{"x", x}, {"s", s}}, e.limit, I * std::exp(-I * s / x), 0.0,
                               {"eta", etas.back(), e.error_estimate});
  r.diagnostics = {{"closed_form_at_smallest_eta_gap", std::abs(bessel_closed_form(x, s, etas.back()) - r.rhs)}};
  return r;
}

// point mass at x = 1, n(it) = e^{it}: int_0^inf n'(it) J0(2 sqrt(st)) dt = i n(is) e^{-2is} = i e^{-is}
inline ResidualReport mock_measure_residual(double s, const std::vector<double>& etas = {0.04, 0.02, 0.01, 0.005, 0.0025}) {
  const auto e = eta_extrapolate(1.0, s, etas);
  const cplx I(0, 1);
  const cplx n_is = std::exp(I * s);
  return detail::make_report("mock_measure", {{"s", s}}, e.limit, I * n_is * std::exp(-2.0 * I * s), 0.0,
                             {"eta", etas.back(), e.error_estimate});
}

// ---------------------------------------------------------------------------
// Discrete functional equation
// ---------------------------------------------------------------------------

struct PartialSumRow {
  long N = 0;
  double signed_sum = 0;  // sum_{n<=N} d_n
  double abs_sum = 0;     // sum_{n<=N} |d_n|
  double wiener = 0;      // W(N) = abs_sum * N^{alpha/2 - 1}
  double block_max = 0;   // max_{N/2 < n <= N} |d_n|
};

// sum_{n>N} |d_n| phi(n) for phi(n) = (2 pi n)^{-3/4} + (2 pi n)^{-1}, by
// summation by parts under the model sum_{n<=t} |d_n| <= W t^{1-alpha/2}
// for t > N (W = the largest Wiener average seen on [N/4, N]). Not rigorous:
// the coefficients beyond N are unknown.
inline double lemma_series_tail(const CoefficientTable& tab, long N) {
  const double beta = 1 - HolderConstants::alpha() / 2;
  double S = 0, W = 0;
  for (long n = 1; n <= N; ++n) {
    S += std::abs(tab.d(n));
    if (n >= N / 4) W = std::max(W, S * std::pow(double(n), -beta));
  }
  const double c34 = std::pow(two_pi, -0.75);
  const double phiN = c34 * std::pow(double(N), -0.75) + 1 / (two_pi * N);
  const double integ = W * (0.75 * c34 * std::pow(double(N), beta - 0.75) / (0.75 - beta) +
                            std::pow(double(N), beta - 1) / (two_pi * (1 - beta)));
  return std::max(0.0, integ - S * phiN);
}

struct Theorem2Term {
  long n = 0;
  double p_plus = 0, p_minus = 0;  // P(2 pi m, 2 pi n), P(2 pi m, -2 pi n)
  double term = 0;                 // int_0^1 cos(2 pi n x) cos(2 pi m/x) dx
  double error = 0;
};

// 1e-9/n, floored at the rounding level of cos(phi) with |phi| ~ a + |b|
inline double theorem2_term_tol(long m, long n) {
  return std::max(1e-9 / double(n), 2e-16 * two_pi * double(m + n));
}

inline Theorem2Term theorem2_term(long m, long n, double tol) {
  const double a = two_pi * m, b = two_pi * n;
  const auto pp = p_integral(a, b, tol);
  const auto pm = p_integral(a, -b, tol);
  return {n, pp.value, pm.value, 0.5 * (pp.value + pm.value), 0.5 * (pp.error_estimate + pm.error_estimate)};
}

// d_m against int_0^1 cos(2 pi m/x) dx + 2 sum_{n<=N} d_n int_0^1 cos(2 pi n x) cos(2 pi m/x) dx.
// Truncation bound: C (2 pi m + 1)/2 * lemma_series_tail. With finite `tol`
// the call fails when that bound exceeds tol.
inline ResidualReport theorem2_residual(long m, const CoefficientTable& tab, long N, double lemma_C,
                                        double tol = std::numeric_limits<double>::infinity(),
                                        unsigned threads = default_threads()) {
  if (m < 1) throw std::domain_error("theorem2_residual: m must be positive");
  if (N < 1 || N > tab.max_n() || m > tab.max_n())
    throw std::out_of_range("theorem2_residual: coefficient table too short");
  const double a = two_pi * m;
  const double majorant = lemma_C * (a + 1) / 2 * lemma_series_tail(tab, N);
  if (majorant > tol)
    throw BudgetError("theorem2_residual: tail majorant " + std::to_string(majorant) + " exceeds tol at N=" +
                          std::to_string(N),
                      {}, majorant);
  std::vector<Theorem2Term> terms(N + 1);
  parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t i) {
    const long n = static_cast<long>(i) + 1;
    terms[n] = theorem2_term(m, n, theorem2_term_tol(m, n));
  });
  const auto p0 = p_integral(a, 0, 1e-12);
  const auto p0_sub = p_integral_substitution(a, 0, 1e-12);
  CompensatedSum<double> sum;
  double qerr = p0.error_estimate + tab.entries[m].err;
  for (long n = 1; n <= N; ++n) {
    const double d = tab.d(n);
    sum.add(2 * d * terms[n].term);
    qerr += 2 * (std::abs(d) * terms[n].error + std::abs(terms[n].term) * tab.entries[n].err);
  }
  auto r = detail::make_report("theorem2", {{"m", double(m)}, {"N", double(N)}}, tab.d(m), p0.value + sum.value(), qerr,
                               {"N", double(N), majorant});
  r.diagnostics = {{"first_term", p0.value},
                   {"first_term_substitution_gap", std::abs(p0.value - p0_sub.value)},
                   {"lemma_C", lemma_C},
                   {"last_term", terms[N].term}};
  return r;
}

// ---------------------------------------------------------------------------
// Fourier series, symmetry, partial sums
// ---------------------------------------------------------------------------

// ?(x) - x against sum_{n<=N} d_n sin(2 pi n x)/(pi n)
inline ResidualReport fourier_series_residual(double x, const CoefficientTable& tab, long N) {
  if (!(x >= 0 && x <= 1)) throw std::domain_error("fourier_series_residual: x must lie in [0,1]");
  if (N < 1 || N > tab.max_n()) throw std::out_of_range("fourier_series_residual: coefficient table too short");
  CompensatedSum<double> s;
  double qerr = 0;
  for (long n = 1; n <= N; ++n) {
    const double sn = std::sin(two_pi * double(n) * x);
    s.add(tab.d(n) * sn / (pi * n));
    qerr += tab.entries[n].err * std::abs(sn) / (pi * n);
  }
  // same summation-by-parts model as the discrete functional equation tail, weight 1/(pi n)
  const double beta = 1 - HolderConstants::alpha() / 2;
  double S = 0, W = 0;
  for (long n = 1; n <= N; ++n) {
    S += std::abs(tab.d(n));
    if (n >= N / 4) W = std::max(W, S * std::pow(double(n), -beta));
  }
  const double tail = std::max(0.0, W * std::pow(double(N), beta - 1) / (pi * (1 - beta)) - S / (pi * N));
  return detail::make_report("fourier_series", {{"x", x}, {"N", double(N)}}, question_mark(x) - x, s.value(), qerr,
                             {"N", double(N), tail});
}

// m(t) against e^t m(-t)
inline ResidualReport symmetry_residual(cplx t) {
  if (std::abs(t.real()) > 100) throw std::domain_error("symmetry_residual: |Re t| > 100 would overflow");
  const auto a = laplace_transform(t);
  const auto b = laplace_transform(-t);
  const cplx rhs = std::exp(t) * b.value;
  auto r = detail::make_report("symmetry", {{"re_t", t.real()}, {"im_t", t.imag()}}, a.value, rhs,
                               a.error_estimate + std::abs(std::exp(t)) * b.error_estimate, {"none", 0, 0});
  r.diagnostics = {{"imag_of_m", a.value.imag()}, {"bound_1e-10_e^|t|", 1e-10 * std::exp(std::abs(t))}};
  return r;
}

struct PartialSumStats {
  double B = 0, B_error = 0;   // 2 int |e^{2 pi i x} - 1|^{-1} d? = int d?/sin(pi x)
  double max_abs_partial = 0;  // max_{N <= N_max} |sum_{n<=N} d_n|
  long argmax_N = 0;
  std::vector<PartialSumRow> rows;  // N = 1, 2, 4, ..., and N_max
};

inline QuadratureResult<double> partial_sum_bound(double tol = 1e-8) {
  IntegrandHints h;
  h.singular_at_0 = 0.5;  // sin(pi x) >= 2x on [0, 1/2]
  h.singular_at_1 = 0.5;
  return integrate_dq([](double x) { return 1 / std::sin(pi * std::min(x, 1 - x)); }, h, tol);
}

inline PartialSumStats partial_sum_stats(const CoefficientTable& tab, long N_max) {
  if (N_max < 1 || N_max > tab.max_n()) throw std::out_of_range("partial_sum_stats: coefficient table too short");
  PartialSumStats st;
  const auto b = partial_sum_bound();
  st.B = b.value;
  st.B_error = b.error_estimate;
  const double ex = HolderConstants::alpha() / 2 - 1;
  double s = 0, sa = 0, bm = 0;
  long next = 1;
  for (long n = 1; n <= N_max; ++n) {
    s += tab.d(n);
    sa += std::abs(tab.d(n));
    bm = std::max(bm, std::abs(tab.d(n)));
    if (std::abs(s) > st.max_abs_partial) {
      st.max_abs_partial = std::abs(s);
      st.argmax_N = n;
    }
    if (n == next || n == N_max) {
      st.rows.push_back({n, s, sa, sa * std::pow(double(n), ex), bm});
      bm = 0;
      if (n == next) next *= 2;
    }
  }
  return st;
}

}  // namespace minkowski
