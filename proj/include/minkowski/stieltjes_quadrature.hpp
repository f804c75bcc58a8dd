#pragma once
// Integration against d?: three independent schemes, the coefficients d_n,
// the transform m(t) = int e^{xt} d?(x) and mhat(T) = int_0^T m(it) dt.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "common.hpp"
#include "minkowski_core.hpp"
#include "parallel.hpp"
#include "quadrature_rules.hpp"

namespace minkowski {

enum class Scheme { farey_adaptive, inverse_pushforward, parts_riemann };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::farey_adaptive: return "farey-adaptive";
    case Scheme::inverse_pushforward: return "inverse-pushforward";
    case Scheme::parts_riemann: return "parts-riemann";
  }
  return "?";
}

inline constexpr double unknown = std::numeric_limits<double>::infinity();

// What the caller knows about g on (0,1). Infinite entries mean "no bound".
struct IntegrandHints {
  double sup_abs = unknown;         // sup |g|
  double sup_derivative = unknown;  // sup |g'|
  double frequency = 0;             // oscillation rate, radians per unit x
  double singular_at_0 = 0;         // c > 0: |g(x)| <= c / x
  double singular_at_1 = 0;         // c > 0: |g(x)| <= c / (1 - x)
  long cosine_mode = -1;            // n >= 0: g is exactly cos(2 pi n x)
};

inline IntegrandHints cosine_hints(long n) {
  IntegrandHints h;
  h.sup_abs = 1;
  h.sup_derivative = two_pi * n;
  h.frequency = two_pi * n;
  h.cosine_mode = n;
  return h;
}

struct QuadratureBudget {
  long max_nodes = 400'000'000;
  int max_depth = 3000;
  double phase_limit = 8.0;    // max phase of g across an atom for the Gauss-? rule
  double balance_limit = 5.0;  // max q1/q0 (or q0/q1) for the Gauss-? rule
};

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0;
  Scheme scheme = Scheme::farey_adaptive;
  long nodes_used = 0;
};

class QuadratureDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// C * sum_{j >= k} (j+1) 2^-j : the d?-integral of C/x over [0, 1/k]
inline double spine_tail_bound(double C, std::uint64_t k) {
  if (k > 1100) return 0.0;
  return C * (double(k) + 2.0) * std::ldexp(1.0, 1 - static_cast<int>(k));
}

// x = M(y) for the Mobius map of an atom, computed as an offset from the left end
inline double atom_point(const FareyAtom& a, double y) {
  const double q0 = double(a.q0), q1 = double(a.q1);
  const double D = q0 * (1 - y) + q1 * y;
  return double(a.p0) / q0 + y / (q0 * D);
}

inline double atom_mediant(const FareyAtom& a) {
  return (double(a.p0) + double(a.p1)) / (double(a.q0) + double(a.q1));
}

template <class T, class G>
T apply_rule(const FixedRule& r, const FareyAtom& a, G& g) {
  T s{};
  for (std::size_t j = 0; j < r.size(); ++j) s += r.w[j] * g(atom_point(a, r.x[j]));
  return s * a.mass();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// scheme (a): adaptive refinement of Farey atoms
// ---------------------------------------------------------------------------

template <class G>
auto integrate_farey_adaptive(G&& g, const IntegrandHints& h, double tol,
                              const QuadratureBudget& budget = {}) {
  using T = std::decay_t<decltype(g(0.5))>;
  const auto& rules = question_mark_rules();
  CompensatedSum<T> total;
  double err = 0;
  long nodes = 0;
  std::vector<FareyAtom> stack{root_atom()};
  while (!stack.empty()) {
    const FareyAtom a = stack.back();
    stack.pop_back();
    const double mass = a.mass(), w = a.width();
    const double tol_atom = tol * (mass + w) / 2;

    const bool at0 = a.p0 == 0, at1 = a.p1 == 1 && a.q1 == 1;
    if ((at0 && h.singular_at_0 > 0) || (at1 && h.singular_at_1 > 0)) {
      const double b = at0 ? detail::spine_tail_bound(h.singular_at_0, a.q1)
                           : detail::spine_tail_bound(h.singular_at_1, a.q0);
      if (b <= tol_atom) {
        err += b;
        continue;
      }
    } else {
      const double rb = mass * std::min(2 * h.sup_abs, h.sup_derivative * w);
      if (rb <= tol_atom) {
        total.add(mass * g(detail::atom_mediant(a)));
        err += rb;
        ++nodes;
        continue;
      }
      const double r = std::max(a.ratio(), 1 / a.ratio());
      if (r <= budget.balance_limit && h.frequency * w * r <= budget.phase_limit) {
        const T hi = detail::apply_rule<T>(rules.k16, a, g);
        const T lo = detail::apply_rule<T>(rules.k8, a, g);
        nodes += 24;
        const double e = std::abs(hi - lo);
        if (e <= tol_atom) {
          total.add(hi);
          err += e;
          continue;
        }
      }
    }
    if (static_cast<int>(a.depth) >= budget.max_depth || nodes > budget.max_nodes)
      throw BudgetError("integrate_dq(farey-adaptive): budget exhausted", cplx(total.value()),
                        unknown);
    auto [l, r] = refine_atom(a);
    stack.push_back(r);
    stack.push_back(l);
  }
  return QuadratureResult<T>{total.value(), err, Scheme::farey_adaptive, nodes};
}

// ---------------------------------------------------------------------------
// scheme (b): int_0^1 g(?^{-1}(u)) du, adaptive midpoint rule in u
// ---------------------------------------------------------------------------

template <class G>
auto integrate_inverse_pushforward(G&& g, const IntegrandHints& h, double tol,
                                   const QuadratureBudget& budget = {}) {
  using T = std::decay_t<decltype(g(0.5))>;
  const bool rigorous = std::isfinite(h.sup_abs) || std::isfinite(h.sup_derivative);
  struct Cell {
    std::uint64_t k;
    int d;
    double xl, xr;
  };
  CompensatedSum<T> total;
  double err = 0;
  long nodes = 0;
  std::vector<Cell> stack{{0, 0, 0.0, 1.0}};
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    const double mass = std::ldexp(1.0, -c.d);
    const double dx = c.xr - c.xl;
    const double tol_cell = tol * (mass + dx) / 2;
    const bool at0 = c.k == 0;
    const bool at1 = c.k + 1 == (std::uint64_t(1) << c.d);
    bool refine = true;
    if ((at0 && h.singular_at_0 > 0) || (at1 && h.singular_at_1 > 0)) {
      // [0, 1/(d+1)] carries mass 2^-d
      const double b = detail::spine_tail_bound(at0 ? h.singular_at_0 : h.singular_at_1,
                                                static_cast<std::uint64_t>(c.d) + 1);
      if (b <= tol_cell) {
        err += b;
        refine = false;
      }
    } else if (c.d < 62) {
      const double xm = box_inverse_dyadic(2 * c.k + 1, c.d + 1);
      const T gm = g(xm);
      ++nodes;
      double b;
      if (rigorous) {
        b = mass * std::min(2 * h.sup_abs, h.sup_derivative * dx);
      } else {
        b = mass * std::max(std::abs(g(c.xl) - gm), std::abs(g(c.xr) - gm));
        nodes += 2;
      }
      if (b <= tol_cell) {
        total.add(mass * gm);
        err += b;
        refine = false;
      }
    }
    if (!refine) continue;
    if (c.d >= 61 || c.d >= budget.max_depth || nodes > budget.max_nodes)
      throw BudgetError("integrate_dq(inverse-pushforward): budget exhausted", cplx(total.value()),
                        unknown);
    const double xm = box_inverse_dyadic(2 * c.k + 1, c.d + 1);
    stack.push_back({2 * c.k + 1, c.d + 1, xm, c.xr});
    stack.push_back({2 * c.k, c.d + 1, c.xl, xm});
  }
  return QuadratureResult<T>{total.value(), err, Scheme::inverse_pushforward, nodes};
}

// ---------------------------------------------------------------------------
// scheme (c): d_n = 2 pi n int_0^1 (?(x) - x) sin(2 pi n x) dx
// ---------------------------------------------------------------------------
//
// phi = ? - x is continuous, odd about 1/2 and 1-periodic, so the periodic
// trapezoid rule on M points is the imaginary part of a length-M real FFT of
// phi(j/M). One FFT yields every n; the same rule on M/2 points (the even
// samples) gives the error estimate.

class PartsRiemannTable {
 public:
  static constexpr int default_log2_grid = 27;
  static constexpr std::size_t default_keep = std::size_t(1) << 16;

  // Process-wide cache, computed on first use for each grid size.
  static const PartsRiemannTable& get(int log2_grid = default_log2_grid) {
    static std::mutex m;
    static std::map<int, std::unique_ptr<PartsRiemannTable>> cache;
    std::lock_guard<std::mutex> lk(m);
    auto& slot = cache[log2_grid];
    if (!slot) slot.reset(new PartsRiemannTable(log2_grid, default_keep));
    return *slot;
  }

  int log2_grid() const { return log2_; }
  std::size_t max_n() const { return fine_.size(); }

  double value(long n) const {
    check(n);
    return n == 0 ? 1.0 : fine_[n - 1];
  }
  // |fine - coarse| times a safety factor; the grid error falls by about
  // 2.5x per doubling, so the difference overstates the fine-grid error.
  // The difference is erratic in n (it nearly vanishes at isolated n while
  // the neighbours are 10x larger), so its local maximum over
  // |k - n| <= max(8, n/8) is used.
  double error(long n) const {
    check(n);
    if (n == 0) return 0.0;
    return safety * envelope_[n - 1] + 1e-14;
  }
  static constexpr double safety = 2.0;

 private:
  PartsRiemannTable(int log2_grid, std::size_t keep) : log2_(log2_grid) {
    if (log2_grid < 6 || log2_grid > 30) throw std::invalid_argument("PartsRiemannTable: grid 2^6..2^30");
    const std::uint64_t M = std::uint64_t(1) << log2_grid;
    keep = std::min<std::size_t>(keep, M / 4 - 1);
    // odd extension phi(1 - x) = -phi(x); padded for the in-place r2c layout
    double* fine = fftw_alloc_real(M + 2);
    double* coarse = fftw_alloc_real(M / 2 + 2);
    if (!fine || !coarse) throw std::bad_alloc();
    fine[0] = fine[M / 2] = 0;
    for (std::uint64_t j = 1; j < M / 2; ++j) {
      const double v = question_mark_fraction_fast(j, M) - double(j) / double(M);
      fine[j] = v;
      fine[M - j] = -v;
    }
    for (std::uint64_t j = 0; j < M / 2; ++j) coarse[j] = fine[2 * j];
    coarse_ = transform(coarse, M / 2, keep);
    fftw_free(coarse);
    fine_ = transform(fine, M, keep);
    fftw_free(fine);
    envelope_.resize(keep);
    for (std::size_t k = 0; k < keep; ++k) {
      const std::size_t w = std::max<std::size_t>(8, (k + 1) / 8);
      const std::size_t lo = k > w ? k - w : 0, hi = std::min(keep - 1, k + w);
      double m = 0;
      for (std::size_t i = lo; i <= hi; ++i) m = std::max(m, std::abs(fine_[i] - coarse_[i]));
      envelope_[k] = m;
    }
  }

  // d_n^(M) = 2 pi n (1/M) sum_j phi(j/M) sin(2 pi n j/M) = -2 pi n Im X_n / M
  static std::vector<double> transform(double* buf, std::uint64_t M, std::size_t keep) {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lk(fftw_planner_mutex());
      plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), buf, reinterpret_cast<fftw_complex*>(buf),
                                  FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lk(fftw_planner_mutex());
      fftw_destroy_plan(plan);
    }
    std::vector<double> out(keep);
    for (std::size_t k = 0; k < keep; ++k) {
      const std::size_t n = k + 1;
      out[k] = -two_pi * double(n) * buf[2 * n + 1] / double(M);
    }
    return out;
  }

  void check(long n) const {
    if (n < 0 || static_cast<std::size_t>(n) > fine_.size())
      throw std::out_of_range("parts-riemann table holds n <= " + std::to_string(fine_.size()));
  }

  int log2_;
  std::vector<double> fine_, coarse_, envelope_;
};

inline int& parts_riemann_grid_setting() {
  static int g = PartsRiemannTable::default_log2_grid;
  return g;
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

template <class G>
auto integrate_dq(G&& g, const IntegrandHints& h, double tol, Scheme scheme = Scheme::farey_adaptive,
                  const QuadratureBudget& budget = {}) {
  using T = std::decay_t<decltype(g(0.5))>;
  if (!(tol > 0)) throw std::invalid_argument("integrate_dq: tol must be positive");
  QuadratureResult<T> r;
  switch (scheme) {
    case Scheme::farey_adaptive: r = integrate_farey_adaptive(g, h, tol, budget); break;
    case Scheme::inverse_pushforward: r = integrate_inverse_pushforward(g, h, tol, budget); break;
    case Scheme::parts_riemann: {
      if (h.cosine_mode < 0)
        throw std::invalid_argument("integrate_dq: parts-riemann applies to g = cos(2 pi n x) only");
      const auto& tab = PartsRiemannTable::get(parts_riemann_grid_setting());
      r.value = T(tab.value(h.cosine_mode));
      r.error_estimate = tab.error(h.cosine_mode);
      r.scheme = Scheme::parts_riemann;
      r.nodes_used = static_cast<long>(std::uint64_t(1) << (tab.log2_grid() - 1));
      break;
    }
  }
  if (r.error_estimate > tol)
    throw BudgetError("integrate_dq(" + to_string(scheme) + "): tolerance not reached",
                      cplx(r.value), r.error_estimate);
  return r;
}

// ---------------------------------------------------------------------------
// Fourier-Stieltjes coefficients
// ---------------------------------------------------------------------------

struct CoefficientEntry {
  long n = 0;
  double d = 0;             // d_n
  double err = 0;           // bound covering the scheme spread
  double imag = 0;          // Im m(2 pi i n) by scheme (a)
  double farey = 0, farey_err = 0;
  double riemann = 0, riemann_err = 0;
};

inline CoefficientEntry fourier_coefficient(long n, double tol = 1e-10) {
  if (n < 0) throw std::domain_error("fourier_coefficient: n must be nonnegative");
  CoefficientEntry e;
  e.n = n;
  if (n == 0) {
    e.d = e.farey = e.riemann = 1.0;
    return e;
  }
  const double f = two_pi * double(n);
  auto g = [f](double x) { return cplx(std::cos(f * x), std::sin(f * x)); };
  IntegrandHints h = cosine_hints(n);
  const auto a = integrate_farey_adaptive(g, h, tol);
  const auto& tab = PartsRiemannTable::get(parts_riemann_grid_setting());
  e.farey = a.value.real();
  e.imag = a.value.imag();
  e.farey_err = a.error_estimate;
  e.riemann = tab.value(n);
  e.riemann_err = tab.error(n);
  const double spread = std::abs(e.farey - e.riemann);
  if (spread > e.farey_err + e.riemann_err)
    throw QuadratureDisagreement("fourier_coefficient: schemes disagree at n=" + std::to_string(n) +
                                 " by " + std::to_string(spread));
  e.d = e.farey;
  e.err = std::max(e.farey_err, spread);
  return e;
}

struct CoefficientTable {
  std::vector<CoefficientEntry> entries;  // entries[n], n = 0..max_n
  double tol = 0;
  long max_n() const { return static_cast<long>(entries.size()) - 1; }
  double d(long n) const { return entries.at(n).d; }
};

inline CoefficientTable build_coefficient_table(long max_n, double tol = 1e-10,
                                                unsigned threads = default_threads()) {
  if (max_n < 0) throw std::invalid_argument("build_coefficient_table: max_n < 0");
  CoefficientTable t;
  t.tol = tol;
  t.entries.resize(max_n + 1);
  PartsRiemannTable::get(parts_riemann_grid_setting());  // build outside the workers
  parallel_for(static_cast<std::size_t>(max_n + 1), threads,
               [&](std::size_t n) { t.entries[n] = fourier_coefficient(static_cast<long>(n), tol); });
  return t;
}

// ---------------------------------------------------------------------------
// m(t) = int e^{xt} d?(x)
// ---------------------------------------------------------------------------

inline QuadratureResult<cplx> laplace_transform(cplx t, double rel_tol = 1e-13) {
  require_finite(t.real(), "laplace_transform");
  require_finite(t.imag(), "laplace_transform");
  if (std::abs(t.real()) > 100) throw std::domain_error("laplace_transform: |Re t| > 100");
  const double scale = std::exp(std::max(t.real(), 0.0));
  IntegrandHints h;
  h.sup_abs = scale;
  h.sup_derivative = std::abs(t) * scale;
  h.frequency = std::abs(t);
  return integrate_farey_adaptive([t](double x) { return std::exp(t * x); }, h, rel_tol * scale);
}

// ---------------------------------------------------------------------------
// mhat(T) = int_0^T m(it) dt = int (e^{ixT} - 1)/(ix) d?(x)
// ---------------------------------------------------------------------------

// (e^{ixT} - 1)/(ix) = e^{ixT/2} 2 sin(xT/2) / x, no cancellation at small x
inline cplx mhat_kernel(double x, double T) {
  const double h = 0.5 * x * T;
  const double s = (h == 0) ? T : 2 * std::sin(h) / x;
  return std::polar(1.0, h) * s;
}

inline IntegrandHints mhat_hints(double T) {
  IntegrandHints h;
  h.sup_abs = T;
  h.sup_derivative = 0.5 * T * T;
  h.frequency = T;
  h.singular_at_0 = 2;  // |kernel| <= 2/x
  return h;
}

// second defining form: one d?-integral
inline QuadratureResult<cplx> mhat(double T, double tol = 1e-11) {
  require_finite(T, "mhat");
  if (T < 0) throw std::domain_error("mhat: T must be nonnegative");
  if (T == 0) return {cplx(0), 0, Scheme::farey_adaptive, 0};
  return integrate_farey_adaptive([T](double x) { return mhat_kernel(x, T); }, mhat_hints(T), tol);
}

// first defining form: Gauss-Legendre panels in t over m(it), each m(it)
// computed by its own adaptive d?-integration
inline QuadratureResult<cplx> mhat_time_integral(double T, double tol = 1e-9) {
  require_finite(T, "mhat");
  if (T < 0) throw std::domain_error("mhat: T must be nonnegative");
  if (T == 0) return {cplx(0), 0, Scheme::farey_adaptive, 0};
  const auto& gl = gauss_legendre<20>();
  const long panels = std::max<long>(1, static_cast<long>(std::ceil(T / 2.0)));
  const double hw = T / panels / 2;
  const double tol_point = tol / (2 * T);
  CompensatedSum<cplx> sum;
  double err = 0;
  long nodes = 0;
  for (long p = 0; p < panels; ++p) {
    const double c = (2 * p + 1) * hw;
    for (std::size_t k = 0; k < gl.size(); ++k) {
      const auto m = laplace_transform(cplx(0, c + hw * gl.x[k]), tol_point);
      sum.add(hw * gl.w[k] * m.value);
      err += hw * gl.w[k] * m.error_estimate;
      nodes += m.nodes_used;
    }
  }
  // 20-point panels over at most one period of the slowest mode are exact to rounding
  return {sum.value(), err + 1e-15 * T, Scheme::farey_adaptive, nodes};
}

// ---------------------------------------------------------------------------
// A fixed rule for d? valid for a family of integrands with frequency <= X
// ---------------------------------------------------------------------------

struct MeasureRule {
  std::vector<double> x, w;
  double max_frequency = 0;
  double dropped_mass_bound = 0;  // spine tails skipped near 0 (bounded by hints)
};

inline MeasureRule build_measure_rule(double max_frequency, const IntegrandHints& family, double tol,
                                      double phase_limit = 10.0) {
  const auto& r16 = question_mark_rules().k16;
  MeasureRule out;
  out.max_frequency = max_frequency;
  std::vector<FareyAtom> stack{root_atom()};
  while (!stack.empty()) {
    const FareyAtom a = stack.back();
    stack.pop_back();
    const double mass = a.mass(), w = a.width();
    const double tol_atom = tol * (mass + w) / 2;
    const bool at0 = a.p0 == 0;
    if (at0 && family.singular_at_0 > 0) {
      const double b = detail::spine_tail_bound(family.singular_at_0, a.q1);
      if (b <= tol_atom) {
        out.dropped_mass_bound += b;
        continue;
      }
    } else {
      const double rb = mass * std::min(2 * family.sup_abs, family.sup_derivative * w);
      if (rb <= tol_atom) {
        out.x.push_back(detail::atom_mediant(a));
        out.w.push_back(mass);
        continue;
      }
      const double r = std::max(a.ratio(), 1 / a.ratio());
      if (r <= 5 && max_frequency * w * r <= phase_limit) {
        for (std::size_t j = 0; j < r16.size(); ++j) {
          out.x.push_back(detail::atom_point(a, r16.x[j]));
          out.w.push_back(mass * r16.w[j]);
        }
        continue;
      }
    }
    if (a.depth > 3000) throw BudgetError("build_measure_rule: depth exhausted", {}, unknown);
    auto [l, rr] = refine_atom(a);
    stack.push_back(rr);
    stack.push_back(l);
  }
  return out;
}

}  // namespace minkowski
