#pragma once
// Fixed rules: Gauss-Legendre panels and Gauss rules for the measure d?.
//
// The d? rule comes from its moments. With z = y - 1/2 the measure satisfies
// int f d? = 1/2 int f((z-1/2)/(2z+3)) d? + (mirror image), so the even central
// moments c_k solve the linear system c_k = sum_i B_ki c_i, where B_ki are the
// Taylor coefficients of w(z)^k, w(z) = (1/2 - z)/(3 + 2z). The recurrence
// coefficients follow from the Chebyshev algorithm; everything runs in
// 100-digit binary floating point and is rounded to double at the end.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <mutex>
#include <vector>

namespace minkowski {

struct FixedRule {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
  std::size_t size() const { return x.size(); }
};

// N-point Gauss-Legendre on [-1, 1]
template <int N>
const FixedRule& gauss_legendre() {
  static const FixedRule rule = [] {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    FixedRule r;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] == 0) continue;
      r.x.push_back(-a[i]);
      r.w.push_back(wt[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x.push_back(a[i]);
      r.w.push_back(wt[i]);
    }
    return r;
  }();
  return rule;
}

namespace detail {

using hp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;

// even central moments c_0..c_{2m} of d?; odd ones vanish by symmetry
inline std::vector<hp> question_mark_central_moments(int count) {
  const int J = count + 40;  // Taylor truncation in z; terms shrink like 3^-i
  // series of w(z) = (1/2 - z) * (1/3) * sum (-2z/3)^i
  std::vector<hp> inv(J + 1), w(J + 1);
  hp r = hp(1) / 3;
  for (int i = 0; i <= J; ++i) {
    inv[i] = r;
    r *= hp(-2) / 3;
  }
  for (int i = 0; i <= J; ++i) w[i] = inv[i] / 2 - (i > 0 ? inv[i - 1] : hp(0));
  // B[k][i]: coefficient of z^i in w(z)^k, only even k and even i matter
  std::vector<std::vector<hp>> B(count + 1);
  std::vector<hp> pw(J + 1, hp(0));
  pw[0] = 1;
  for (int k = 1; k <= count; ++k) {
    std::vector<hp> nx(J + 1, hp(0));
    for (int i = 0; i <= J; ++i) {
      if (pw[i] == 0) continue;
      for (int j = 0; i + j <= J; ++j) nx[i + j] += pw[i] * w[j];
    }
    pw = std::move(nx);
    if (k % 2 == 0) B[k] = pw;
  }
  // unknowns c_2, c_4, ..., c_count (moments beyond count are negligible)
  const int n = count / 2;
  std::vector<std::vector<hp>> A(n, std::vector<hp>(n + 1, hp(0)));
  for (int a = 0; a < n; ++a) {
    const int k = 2 * (a + 1);
    for (int b = 0; b < n; ++b) A[a][b] = -B[k][2 * (b + 1)];
    A[a][a] += 1;
    A[a][n] = B[k][0];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r2 = c + 1; r2 < n; ++r2)
      if (abs(A[r2][c]) > abs(A[piv][c])) piv = r2;
    std::swap(A[c], A[piv]);
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == c || A[r2][c] == 0) continue;
      const hp f = A[r2][c] / A[c][c];
      for (int j = c; j <= n; ++j) A[r2][j] -= f * A[c][j];
    }
  }
  std::vector<hp> mom(count + 1, hp(0));
  mom[0] = 1;
  for (int a = 0; a < n; ++a) mom[2 * (a + 1)] = A[a][n] / A[a][a];
  return mom;
}

// Gauss rule of order K for a symmetric measure on [-1/2, 1/2], from moments
inline FixedRule gauss_rule_from_moments(const std::vector<hp>& mu, int K, double shift) {
  // Chebyshev algorithm
  const int L = 2 * K;
  std::vector<hp> alpha(K, hp(0)), beta(K, hp(0));
  std::vector<hp> sm2(L, hp(0)), sm1(mu.begin(), mu.begin() + L), s0(L, hp(0));
  alpha[0] = mu[1] / mu[0];
  beta[0] = mu[0];
  for (int k = 1; k < K; ++k) {
    for (int l = k; l < L - k; ++l)
      s0[l] = sm1[l + 1] - alpha[k - 1] * sm1[l] - beta[k - 1] * sm2[l];
    alpha[k] = s0[k + 1] / s0[k] - sm1[k] / sm1[k - 1];
    beta[k] = s0[k] / sm1[k - 1];
    sm2 = sm1;
    sm1 = s0;
  }
  // orthonormal recurrence: sqrt(b_{k+1}) p_{k+1} = (z - a_k) p_k - sqrt(b_k) p_{k-1}
  std::vector<hp> sb(K + 1);
  for (int k = 1; k < K; ++k) sb[k] = sqrt(beta[k]);
  auto sturm_count = [&](const hp& z) {  // eigenvalues of the Jacobi matrix below z
    int cnt = 0;
    hp d = alpha[0] - z;
    if (d < 0) ++cnt;
    for (int k = 1; k < K; ++k) {
      if (d == 0) d = hp(1e-80);
      d = (alpha[k] - z) - beta[k] / d;
      if (d < 0) ++cnt;
    }
    return cnt;
  };
  FixedRule r;
  for (int j = 0; j < K; ++j) {
    hp lo = -0.5, hi = 0.5;
    for (int it = 0; it < 200; ++it) {
      const hp mid = (lo + hi) / 2;
      if (sturm_count(mid) > j) hi = mid;
      else lo = mid;
    }
    const hp z = (lo + hi) / 2;
    // Christoffel weight 1 / sum p_k(z)^2 with orthonormal p_k
    hp pm1 = 0, p = 1 / sqrt(beta[0]), s = p * p;
    for (int k = 0; k + 1 < K; ++k) {
      const hp pn = ((z - alpha[k]) * p - (k > 0 ? sb[k] : hp(0)) * pm1) / sb[k + 1];
      pm1 = p;
      p = pn;
      s += p * p;
    }
    r.x.push_back(static_cast<double>(z + shift));
    r.w.push_back(static_cast<double>(1 / s));
  }
  return r;
}

}  // namespace detail

// Gauss rules for d? on [0,1] with K = 8 and K = 16 nodes. Exact for
// polynomials of degree 2K-1.
struct QuestionMarkRules {
  FixedRule k16;
  FixedRule k8;
  std::vector<double> central_moments;  // c_0, c_1, ..., c_32 in double
};

inline const QuestionMarkRules& question_mark_rules() {
  static const QuestionMarkRules rules = [] {
    const auto mom = detail::question_mark_central_moments(112);
    QuestionMarkRules q;
    q.k16 = detail::gauss_rule_from_moments(mom, 16, 0.5);
    q.k8 = detail::gauss_rule_from_moments(mom, 8, 0.5);
    for (int i = 0; i <= 32; ++i) q.central_moments.push_back(static_cast<double>(mom[i]));
    return q;
  }();
  return rules;
}

}  // namespace minkowski
