#pragma once
// Type-1 nonuniform FFT by Gaussian gridding:
//   F(k) = sum_j c_j exp(i k w_j),  k = 0..K-1,  w_j real.
// Sources are spread onto a 2x oversampled periodic grid with a truncated
// Gaussian, transformed with FFTW and deconvolved. With spread half-width
// `half_width` the relative error (to sum |c_j|) is about exp(-2 pi half_width / 3).

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "common.hpp"

namespace minkowski {

inline std::vector<cplx> nufft_type1(const std::vector<double>& w, const std::vector<cplx>& c, long K,
                                     int half_width = 14) {
  if (w.size() != c.size()) throw std::invalid_argument("nufft_type1: size mismatch");
  if (K <= 0) return {};
  // centered modes k' = k - K/2 in [-K/2, K/2)
  const long half = K / 2;
  long Mr = 1;
  while (Mr < 2 * K) Mr *= 2;
  const double R = double(Mr) / double(K);
  const double tau = pi * half_width / (double(K) * double(K) * R * (R - 0.5));
  const double hgrid = two_pi / double(Mr);

  std::vector<cplx> grid(Mr, cplx(0));
  for (std::size_t j = 0; j < w.size(); ++j) {
    double wj = std::fmod(w[j], two_pi);
    if (wj < 0) wj += two_pi;
    const cplx cj = c[j] * std::polar(1.0, double(half) * w[j]);  // shift to centered modes
    const long m0 = std::lround(wj / hgrid);
    for (long d = -half_width; d <= half_width; ++d) {
      const long m = m0 + d;
      const double dx = double(m) * hgrid - wj;
      long mm = m % Mr;
      if (mm < 0) mm += Mr;
      grid[mm] += cj * std::exp(-dx * dx / (4 * tau));
    }
  }
  std::vector<cplx> out(Mr);
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(Mr), reinterpret_cast<fftw_complex*>(grid.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(p);
    fftw_destroy_plan(p);
  }
  // out[m] = sum_x h(x) e^{+i m x}; F(k') = out[k'] / (Mr * ghat(k'))
  std::vector<cplx> F(K);
  const double gnorm = std::sqrt(tau / pi);
  for (long k = 0; k < K; ++k) {
    const long kc = k - half;
    long idx = kc % Mr;
    if (idx < 0) idx += Mr;
    F[k] = out[idx] / (double(Mr) * gnorm * std::exp(-double(kc) * double(kc) * tau));
  }
  return F;
}

}  // namespace minkowski
