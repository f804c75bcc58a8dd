#pragma once
// P(a,b) = int_0^1 cos(a/x + b x) dx, the truncated integrals int_eps^1, their
// stationary-phase estimate and the empirical scan of the tail-integral bounds.
//
// Layout of the computation for a > 0:
//   [delta, 1]  Gauss-Legendre panels whose ends sit where cos(phi) = 0, so
//               every panel spans at most pi of phase and the running integral
//               int_eps^1 takes its local extrema exactly at panel ends;
//   (0, delta]  with y = 1/x this is int_Y^inf cos(a y + b/y) y^-2 dy, Y = 1/delta,
//               evaluated on the rotated ray y = Y + iu where the integrand
//               decays like exp(-kappa u), kappa = a - max(b,0)/Y^2 >= 3a/4.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "quadrature_rules.hpp"

namespace minkowski {

enum class OscillatoryMethod { adaptive_direct, stationary_phase, substitution };

inline std::string to_string(OscillatoryMethod m) {
  switch (m) {
    case OscillatoryMethod::adaptive_direct: return "adaptive-direct";
    case OscillatoryMethod::stationary_phase: return "stationary-phase";
    case OscillatoryMethod::substitution: return "substitution";
  }
  return "?";
}

struct OscillatoryResult {
  double value = 0;
  double error_estimate = 0;
  OscillatoryMethod method = OscillatoryMethod::adaptive_direct;
  std::optional<double> stationary_point;
  double amplitude = 0;  // stationary-phase estimates: size of the leading terms
  long evaluations = 0;
};

// x0 = sqrt(a/b) when it lies in (0,1)
inline std::optional<double> stationary_point_of(double a, double b) {
  if (a > 0 && b > 0) {
    const double x0 = std::sqrt(a / b);
    if (x0 < 1) return x0;
  }
  return std::nullopt;
}

namespace detail {

struct PhaseFn {
  double a, b;
  double operator()(double x) const { return a / x + b * x; }
  double d1(double x) const { return b - a / (x * x); }
};

// x in [u,v] with phi(x) = c, phi monotone on [u,v]
inline double solve_phase(const PhaseFn& phi, double u, double v, double c) {
  double fu = phi(u) - c;
  double lo = u, hi = v;
  const bool inc = phi(v) > phi(u);
  double x = 0.5 * (u + v);
  for (int it = 0; it < 200; ++it) {
    const double f = phi(x) - c;
    if ((f > 0) == inc) hi = x;
    else lo = x;
    const double d = phi.d1(x);
    double xn = (d != 0) ? x - f / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 4e-16 * x || hi - lo <= 4e-16 * hi) return xn;
    x = xn;
  }
  (void)fu;
  return x;
}

// one panel, GL10 with a GL6 comparison; splits in x when they disagree.
// amp(x) multiplies cos(phi(x)).
template <class Amp>
void integrate_cos_panel(const PhaseFn& phi, const Amp& amp, double u, double v, double tol_density,
                         double& value, double& err, long& evals, int depth = 0) {
  const auto& g10 = gauss_legendre<10>();
  const auto& g6 = gauss_legendre<6>();
  const double c = 0.5 * (u + v), h = 0.5 * (v - u);
  double s10 = 0, s6 = 0, l1 = 0, phase = 0;
  for (std::size_t k = 0; k < g10.size(); ++k) {
    const double x = c + h * g10.x[k];
    const double p = phi(x), w = g10.w[k] * amp(x);
    s10 += w * std::cos(p);
    l1 += std::abs(w);
    phase = std::max(phase, std::abs(p));
  }
  for (std::size_t k = 0; k < g6.size(); ++k) {
    const double x = c + h * g6.x[k];
    s6 += g6.w[k] * amp(x) * std::cos(phi(x));
  }
  s10 *= h;
  s6 *= h;
  evals += 16;
  const double e = std::abs(s10 - s6);
  // cos(phi) carries an absolute rounding error of about eps |phi|
  const double noise = 4e-16 * (1 + phase) * h * l1;
  if (e <= tol_density * (v - u) + noise || depth >= 40) {
    value += s10;
    err += e;
    return;
  }
  integrate_cos_panel(phi, amp, u, c, tol_density, value, err, evals, depth + 1);
  integrate_cos_panel(phi, amp, c, v, tol_density, value, err, evals, depth + 1);
}

inline void integrate_cos_panel(const PhaseFn& phi, double u, double v, double tol_density,
                                double& value, double& err, long& evals) {
  integrate_cos_panel(phi, [](double) { return 1.0; }, u, v, tol_density, value, err, evals);
}

// Wynn's epsilon table on a sequence of partial sums; returns the last
// even-column entry with the smallest step and that step as error.
inline std::pair<double, double> wynn_epsilon(const std::vector<double>& s) {
  std::vector<double> prev(s.size() + 1, 0.0), cur(s.begin(), s.end());
  double best = s.back();
  double best_err = s.size() > 1 ? std::abs(s.back() - s[s.size() - 2]) : 1.0;
  for (int k = 1; cur.size() > 2; ++k) {
    std::vector<double> next(cur.size() - 1);
    bool exact = false;
    for (std::size_t n = 0; n + 1 < cur.size(); ++n) {
      const double d = cur[n + 1] - cur[n];
      if (d == 0) exact = true;
      else next[n] = prev[n + 1] + 1.0 / d;
    }
    if (exact) break;  // a column has converged exactly
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0 && cur.size() >= 2) {
      const double e = std::abs(cur.back() - cur[cur.size() - 2]);
      if (e < best_err) {
        best_err = e;
        best = cur.back();
      }
    }
  }
  return {best, best_err};
}

// panel ends on [lo, hi]: lo, the zeros of cos(phi) inside, hi; split at x0
inline std::vector<double> phase_breakpoints(const PhaseFn& phi, double lo, double hi) {
  std::vector<double> cuts{lo};
  std::vector<double> pieces{lo};
  if (phi.a > 0 && phi.b > 0) {
    const double x0 = std::sqrt(phi.a / phi.b);
    if (x0 > lo && x0 < hi) pieces.push_back(x0);
  }
  pieces.push_back(hi);
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    const double u = pieces[p], v = pieces[p + 1];
    const double pu = phi(u), pv = phi(v);
    // zeros of cos: phase = pi/2 + k pi
    const double k0 = std::ceil((std::min(pu, pv) - pi / 2) / pi);
    const double k1 = std::floor((std::max(pu, pv) - pi / 2) / pi);
    std::vector<double> inner;
    for (double k = k0; k <= k1; k += 1) {
      const double c = pi / 2 + k * pi;
      const double x = solve_phase(phi, u, v, c);
      if (x > u && x < v) inner.push_back(x);
    }
    std::sort(inner.begin(), inner.end());
    for (double x : inner)
      if (x > cuts.back()) cuts.push_back(x);
    if (v > cuts.back()) cuts.push_back(v);
  }
  return cuts;
}

// adaptive GL20 with a GL10 comparison against an absolute tolerance density.
// noise_rel is the relative rounding level of f (large phases lose digits),
// taken against the panel's L1 mass since the panel sum itself may cancel;
// differences below it are accepted and still counted in err.
template <class F, class T>
void adaptive_gl(const F& f, double u, double v, double tol_density, T& value, double& err,
                 long& evals, double noise_rel = 1e-15, int depth = 0) {
  const auto& g20 = gauss_legendre<20>();
  const auto& g10 = gauss_legendre<10>();
  const double c = 0.5 * (u + v), h = 0.5 * (v - u);
  T s20{}, s10{};
  double l1 = 0;
  for (std::size_t k = 0; k < g20.size(); ++k) {
    const T y = f(c + h * g20.x[k]);
    s20 += g20.w[k] * y;
    l1 += g20.w[k] * std::abs(y);
  }
  for (std::size_t k = 0; k < g10.size(); ++k) s10 += g10.w[k] * f(c + h * g10.x[k]);
  s20 *= h;
  s10 *= h;
  evals += 30;
  const double e = std::abs(s20 - s10);
  if (e <= tol_density * (v - u) + noise_rel * h * l1 + 1e-300 || depth >= 30) {
    value += s20;
    err += e;
    return;
  }
  adaptive_gl(f, u, c, tol_density, value, err, evals, noise_rel, depth + 1);
  adaptive_gl(f, c, v, tol_density, value, err, evals, noise_rel, depth + 1);
}

// int_Y^inf cos(a y + b/y) y^-2 dy along y = Y + iu; requires a Y^2 > max(b, 0).
// The integrand is bounded by exp(-kappa u)/Y^2 and has its structure on
// the scales Y^2/|b| (near u = 0), Y and 1/kappa, so the panels grow
// geometrically from the smallest of these.
inline double contour_tail(double a, double b, double Y, double tol, double& err, long& evals) {
  if (std::isinf(Y)) return 0.0;
  const double kappa = a - std::max(b, 0.0) / (Y * Y);
  if (!(kappa > 0)) throw std::logic_error("contour_tail: ray not in the decay region");
  auto f = [&](double u) {
    const cplx y(Y, u);
    const cplx e = std::exp(cplx(0, 1) * (a * y + b / y));
    return cplx(0, 1) * e / (y * y);
  };
  const double U = 60.0 / kappa;
  const double hmax = std::min(2.0 / kappa, Y);
  double h = std::min({hmax, Y * Y / (std::abs(b) + 1), 1.0 / kappa}) / 4;
  const double dens = tol / U;
  const double noise = 4e-16 * (1 + a * Y + std::abs(b) / Y);
  // complex integrand: the rounding of the phase scales with |f|, not |Re f|
  cplx total = 0;
  double e_total = 0;
  for (double s = 0; s < U;) {
    const double t = std::min(U, s + h);
    adaptive_gl(f, s, t, dens, total, e_total, evals, noise);
    s = t;
    h = std::min(hmax, 1.5 * h);
  }
  // discarded ray beyond U: |integrand| <= exp(-kappa u) / Y^2
  e_total += std::exp(-kappa * U) / (kappa * Y * Y);
  err += e_total;
  return total.real();
}

struct CosIntegralParts {
  double delta = 1;                // main part is [delta, 1]
  double Y = 1;                    // 1/delta
  std::vector<double> cuts;        // panel ends on [delta, 1]
  std::vector<double> panel;       // panel integrals
  double main = 0, main_err = 0;
  double tail = 0, tail_err = 0;   // int_0^delta
  long evals = 0;
};

inline CosIntegralParts cos_integral_parts(double a, double b, double tol) {
  CosIntegralParts P;
  P.Y = std::max(1.0, 2.0 * std::sqrt(std::max(b, 0.0) / a));
  P.delta = 1.0 / P.Y;
  const PhaseFn phi{a, b};
  if (P.delta < 1) {
    P.cuts = phase_breakpoints(phi, P.delta, 1.0);
    const double dens = 0.5 * tol / (1 - P.delta);
    for (std::size_t i = 0; i + 1 < P.cuts.size(); ++i) {
      double v = 0;
      integrate_cos_panel(phi, P.cuts[i], P.cuts[i + 1], dens, v, P.main_err, P.evals);
      P.panel.push_back(v);
    }
    CompensatedSum<double> s;
    for (double v : P.panel) s.add(v);
    P.main = s.value();
  }
  P.tail = contour_tail(a, b, P.Y, 0.5 * tol, P.tail_err, P.evals);
  return P;
}

inline void check_args(double a, double b, const char* who) {
  require_finite(a, who);
  require_finite(b, who);
  if (a < 0) throw std::domain_error(std::string(who) + ": a must be nonnegative");
}

}  // namespace detail

// P(a,b) = int_0^1 cos(a/x + b x) dx
inline OscillatoryResult p_integral(double a, double b, double tol = 1e-10) {
  detail::check_args(a, b, "p_integral");
  OscillatoryResult r;
  r.stationary_point = stationary_point_of(a, b);
  if (a == 0) {
    r.value = (b == 0) ? 1.0 : std::sin(b) / b;
    r.error_estimate = 1e-16;
    return r;
  }
  const auto P = detail::cos_integral_parts(a, b, tol);
  r.value = P.main + P.tail;
  r.error_estimate = P.main_err + P.tail_err + 1e-16 * P.cuts.size();
  r.evaluations = P.evals;
  if (r.error_estimate > tol)
    throw BudgetError("p_integral: tolerance not reached", cplx(r.value), r.error_estimate);
  return r;
}

// int_eps^1 cos(b x + a/x) dx
inline OscillatoryResult tail_integral(double a, double b, double eps, double tol = 1e-10) {
  detail::check_args(a, b, "tail_integral");
  require_finite(eps, "tail_integral");
  if (eps < 0 || eps > 1) throw std::domain_error("tail_integral: eps must lie in [0,1]");
  OscillatoryResult r;
  r.stationary_point = stationary_point_of(a, b);
  if (eps == 1) return r;
  if (a == 0) {
    r.value = (b == 0) ? 1 - eps : (std::sin(b) - std::sin(b * eps)) / b;
    r.error_estimate = 1e-16;
    return r;
  }
  const double Y = std::max(1.0, 2.0 * std::sqrt(std::max(b, 0.0) / a));
  const double delta = 1 / Y;
  const detail::PhaseFn phi{a, b};
  double val = 0, err = 0;
  long evals = 0;
  const double lo = std::max(eps, delta);
  if (lo < 1) {
    const auto cuts = detail::phase_breakpoints(phi, lo, 1.0);
    const double dens = 0.5 * tol / (1 - lo);
    CompensatedSum<double> s;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double v = 0;
      detail::integrate_cos_panel(phi, cuts[i], cuts[i + 1], dens, v, err, evals);
      s.add(v);
    }
    val = s.value();
  }
  if (eps < delta) {
    // int_eps^delta = T(Y) - T(1/eps)
    const double t1 = detail::contour_tail(a, b, Y, 0.25 * tol, err, evals);
    const double t2 = eps == 0 ? 0.0 : detail::contour_tail(a, b, 1 / eps, 0.25 * tol, err, evals);
    val += t1 - t2;
  }
  r.value = val;
  r.error_estimate = err;
  r.evaluations = evals;
  if (r.error_estimate > tol)
    throw BudgetError("tail_integral: tolerance not reached", cplx(r.value), r.error_estimate);
  return r;
}

// sup over eps in [0,1] of |int_eps^1 cos(b x + a/x) dx|, with the maximizing eps.
// The running integral F(eps) = int_eps^1 has its extrema at the zeros of
// cos(phi), which are panel ends. Below delta, phi' keeps one sign with
// |phi'| >= a/(c x^2) (c = 2 for b <= 0, 8/3 for b > 0 since delta <= x0/2),
// so integration by parts gives |F(eps) - F(0)| <= c eps^2/a. Panels are
// extended towards 0 by halving until that bound cannot lift |F| above the
// sup found so far by more than sup_rel.
struct SupOverEps {
  double sup = 0;
  double eps_at = 1;
  double error_estimate = 0;
  double eps_floor = 0;  // below this only the bound c eps^2/a was used
};

inline SupOverEps sup_over_eps(double a, double b, double tol = 1e-10, double sup_rel = 1e-7) {
  detail::check_args(a, b, "sup_over_eps");
  SupOverEps s;
  if (a == 0) {
    // extrema of (sin b - sin(b eps))/b at eps with cos(b eps) = 0, and eps = 0
    auto f = [&](double e) { return b == 0 ? 1 - e : (std::sin(b) - std::sin(b * e)) / b; };
    s.sup = std::abs(f(0));
    s.eps_at = 0;
    if (b != 0)
      for (double k = 0; (pi / 2 + k * pi) / std::abs(b) < 1; k += 1) {
        const double e = (pi / 2 + k * pi) / std::abs(b);
        if (std::abs(f(e)) > s.sup) {
          s.sup = std::abs(f(e));
          s.eps_at = e;
        }
      }
    return s;
  }
  const auto P = detail::cos_integral_parts(a, b, tol);
  auto consider = [&](double F, double eps) {
    if (std::abs(F) > s.sup) {
      s.sup = std::abs(F);
      s.eps_at = eps;
    }
  };
  // from the right: F(cuts[i]) = sum_{j >= i} panel[j]
  double F = 0;
  for (std::size_t i = P.panel.size(); i-- > 0;) {
    F += P.panel[i];
    consider(F, P.cuts[i]);
  }
  const double full = P.main + P.tail;
  consider(full, 0);
  double err = P.main_err + P.tail_err;
  long evals = P.evals;
  const double c = b > 0 ? 8.0 / 3 : 2.0;
  const detail::PhaseFn phi{a, b};
  const double dens = 0.5 * tol;
  double lo = P.delta;
  F = P.main;  // F(delta)
  consider(F, lo);
  while (std::abs(full) + c * lo * lo / a > s.sup * (1 + sup_rel) + tol && lo > 1e-12) {
    const double nlo = 0.5 * lo;
    const auto cuts = detail::phase_breakpoints(phi, nlo, lo);
    for (std::size_t i = cuts.size() - 1; i-- > 0;) {
      double v = 0;
      detail::integrate_cos_panel(phi, cuts[i], cuts[i + 1], dens, v, err, evals);
      F += v;
      consider(F, cuts[i]);
    }
    lo = nlo;
  }
  s.eps_floor = lo;
  s.error_estimate = err;
  return s;
}

// Independent check: y = 1/x turns P(a,b) into int_1^inf cos(a y + b/y) y^-2 dy,
// integrated between consecutive zeros of the phase with Wynn's epsilon
// acceleration of the alternating partial sums. Meant for |b| not much
// larger than a.
inline OscillatoryResult p_integral_substitution(double a, double b, double tol = 1e-10) {
  detail::check_args(a, b, "p_integral_substitution");
  if (!(a > 0)) throw std::domain_error("p_integral_substitution: needs a > 0");
  OscillatoryResult r;
  r.method = OscillatoryMethod::substitution;
  r.stationary_point = stationary_point_of(a, b);
  // psi(y) = a y + b/y has the same shape as phi with the roles of a and b swapped
  const detail::PhaseFn psi{b, a};
  auto amp = [](double y) { return 1.0 / (y * y); };
  const double ys = std::max(1.0, 2.0 * std::sqrt(std::max(b, 0.0) / a));
  double sum = 0;
  long evals = 0;
  if (ys > 1) {
    const auto cuts = detail::phase_breakpoints(psi, 1.0, ys);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      detail::integrate_cos_panel(psi, amp, cuts[i], cuts[i + 1], 1e-3 * tol, sum, r.error_estimate, evals);
  }
  // beyond ys psi increases; step from zero to zero of cos(psi)
  std::vector<double> partial;
  double y = ys;
  double k = std::floor((psi(y) - pi / 2) / pi) + 1;
  for (int i = 0; i < 60; ++i, k += 1) {
    double hi = y + 2 * pi / a;
    while (psi(hi) < pi / 2 + k * pi) hi += pi / a;
    const double z = detail::solve_phase(psi, y, hi, pi / 2 + k * pi);
    detail::integrate_cos_panel(psi, amp, y, z, 1e-3 * tol, sum, r.error_estimate, evals);
    y = z;
    partial.push_back(sum);
  }
  const auto [v, e] = detail::wynn_epsilon(partial);
  r.value = v;
  r.error_estimate += e;
  r.evaluations = evals;
  return r;
}

// leading stationary-phase estimate for b > a: saddle at x0 plus the end x = 1
inline OscillatoryResult stationary_phase_estimate(double a, double b) {
  detail::check_args(a, b, "stationary_phase_estimate");
  if (!(a > 0)) throw std::domain_error("stationary_phase_estimate: a must be positive");
  if (!(b > a)) throw std::domain_error("stationary_phase_estimate: needs b > a (x0 < 1)");
  OscillatoryResult r;
  r.method = OscillatoryMethod::stationary_phase;
  r.stationary_point = std::sqrt(a / b);
  const double phi2 = 2 * std::pow(b, 1.5) / std::sqrt(a);
  const double saddle = std::sqrt(two_pi / phi2);
  r.value = saddle * std::cos(2 * std::sqrt(a * b) + pi / 4) + std::sin(a + b) / (b - a);
  r.amplitude = saddle + 1 / (b - a);
  r.error_estimate = std::numeric_limits<double>::infinity();  // asymptotic, no error bar
  return r;
}

inline double stationary_amplitude(double a, double b) {
  return std::sqrt(two_pi / (2 * std::pow(b, 1.5) / std::sqrt(a)));
}

// ---- empirical scan of the tail bounds ----

enum class LemmaBranch { positive, negative };

struct LemmaRow {
  double a = 0, b = 0, eps = 0;  // eps: maximizer (exact sup or best grid point)
  double ratio = 0;              // |int_eps^1| * b^{3/4}/(a+1) or * |b|/(a+1)
};

struct LemmaScanReport {
  std::vector<double> a_grid, b_grid, eps_grid;  // empty eps_grid: exact sup over eps
  std::vector<LemmaRow> rows;
  double empirical_C_pos = 0, empirical_C_neg = 0;
  LemmaRow worst_pos, worst_neg;
  double max_error_estimate = 0;
};

inline double lemma_normalizer(double a, double b) {
  return (b > 0 ? std::pow(b, 0.75) : std::abs(b)) / (a + 1);
}

inline LemmaRow lemma_ratio(double a, double b, const std::vector<double>& eps_grid, double tol,
                            double* err = nullptr) {
  LemmaRow row{a, b, 1, 0};
  if (eps_grid.empty()) {
    const auto s = sup_over_eps(a, b, tol);
    row.eps = s.eps_at;
    row.ratio = s.sup * lemma_normalizer(a, b);
    if (err) *err = s.error_estimate;
    return row;
  }
  for (double e : eps_grid) {
    const auto t = tail_integral(a, b, e, tol);
    const double r = std::abs(t.value) * lemma_normalizer(a, b);
    if (err) *err = std::max(*err, t.error_estimate);
    if (r > row.ratio) {
      row.ratio = r;
      row.eps = e;
    }
  }
  return row;
}

// b_grid entries must satisfy |b| >= 2 pi; the sign selects the branch.
template <class ParallelFor>
LemmaScanReport lemma_scan(const std::vector<double>& a_grid, const std::vector<double>& b_grid,
                           const std::vector<double>& eps_grid, double tol, ParallelFor&& pfor) {
  for (double b : b_grid)
    if (!(std::abs(b) >= two_pi)) throw std::domain_error("lemma_scan: |b| must be at least 2 pi");
  LemmaScanReport rep{a_grid, b_grid, eps_grid, {}, 0, 0, {}, {}, 0};
  const std::size_t nb = b_grid.size();
  rep.rows.resize(a_grid.size() * nb);
  std::vector<double> errs(rep.rows.size(), 0.0);
  pfor(rep.rows.size(), [&](std::size_t i) {
    rep.rows[i] = lemma_ratio(a_grid[i / nb], b_grid[i % nb], eps_grid, tol, &errs[i]);
  });
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    rep.max_error_estimate = std::max(rep.max_error_estimate, errs[i]);
    if (r.b > 0 && r.ratio > rep.empirical_C_pos) {
      rep.empirical_C_pos = r.ratio;
      rep.worst_pos = r;
    }
    if (r.b < 0 && r.ratio > rep.empirical_C_neg) {
      rep.empirical_C_neg = r.ratio;
      rep.worst_neg = r;
    }
  }
  return rep;
}

inline LemmaScanReport lemma_scan(const std::vector<double>& a_grid, const std::vector<double>& b_grid,
                                  const std::vector<double>& eps_grid, double tol = 1e-10) {
  return lemma_scan(a_grid, b_grid, eps_grid, tol,
                    [](std::size_t n, auto&& f) { for (std::size_t i = 0; i < n; ++i) f(i); });
}

// log-spaced b values with `per_octave` points per doubling on [lo, hi]
inline std::vector<double> log_grid(double lo, double hi, int per_octave) {
  std::vector<double> g;
  const int n = static_cast<int>(std::floor(std::log2(hi / lo) * per_octave + 1e-9));
  for (int k = 0; k <= n; ++k) g.push_back(lo * std::exp2(static_cast<double>(k) / per_octave));
  return g;
}

// Envelope of the positive-branch ratio: the maximum of the exact
// sup-over-eps ratio on b in [B, B * 2^octaves), sampled per_octave per doubling.
inline double lemma_window_max(double a, double B, double octaves, int per_octave, double tol = 1e-10) {
  double m = 0;
  const int n = static_cast<int>(std::lround(octaves * per_octave));
  for (int k = 0; k < n; ++k) {
    const double b = B * std::exp2(static_cast<double>(k) / per_octave);
    m = std::max(m, lemma_ratio(a, b, {}, tol).ratio);
  }
  return m;
}

struct PlateauPair {
  double B = 0;
  double window_max_B = 0, window_max_16B = 0;
  double rel_change = 0;  // |M(16B) - M(B)| / max(M(B), M(16B))
};

// window maxima at B and 16B for B = b_lo * 2^k while 16B * 2^octaves <= b_hi
inline std::vector<PlateauPair> lemma_plateau(double a, double b_lo, double b_hi, double octaves = 2,
                                              int per_octave = 64, double tol = 1e-10) {
  std::vector<PlateauPair> out;
  std::vector<double> cache;
  auto M = [&](int k) {
    while (static_cast<int>(cache.size()) <= k)
      cache.push_back(lemma_window_max(a, b_lo * std::exp2(static_cast<double>(cache.size())), octaves,
                                       per_octave, tol));
    return cache[k];
  };
  for (int k = 0; b_lo * std::exp2(k + 4 + octaves) <= b_hi * (1 + 1e-12); ++k) {
    PlateauPair p;
    p.B = b_lo * std::exp2(k);
    p.window_max_B = M(k);
    p.window_max_16B = M(k + 4);
    p.rel_change = std::abs(p.window_max_16B - p.window_max_B) / std::max(p.window_max_B, p.window_max_16B);
    out.push_back(p);
  }
  return out;
}

}  // namespace minkowski
