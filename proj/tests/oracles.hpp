// oracles.hpp
//
// Copyright 2026  The Sonolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Independent reference implementations for the test suite. Everything here
// is direct-summation arithmetic that deliberately shares no code with the
// library: the naive DFT checks the FFT, the normal equations check the QR
// fit, numeric integration checks the continued-fraction t tail, and so on.

#ifndef SONOLAB_TESTS_ORACLES_HPP
#define SONOLAB_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

// O(n^2) DFT, one-sided |X[k]|^2 with zero padding, k = 0..n_fft/2.
inline std::vector<double> naive_power_spectrum(const std::vector<double>& x,
                                                std::size_t n_fft) {
  std::vector<double> out(n_fft / 2 + 1, 0.0);
  for (std::size_t k = 0; k <= n_fft / 2; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double ph = -2.0 * M_PI * static_cast<double>(k) *
                        static_cast<double>(n) / static_cast<double>(n_fft);
      acc += x[n] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out[k] = std::norm(acc);
  }
  return out;
}

inline double time_energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

// Energy of x within [f_lo, f_hi] Hz measured by the naive DFT.
inline double band_energy(const std::vector<double>& x, double rate,
                          double f_lo, double f_hi) {
  std::size_t n_fft = 1;
  while (n_fft < x.size()) n_fft <<= 1;
  const std::vector<double> p = naive_power_spectrum(x, n_fft);
  const double bin = rate / static_cast<double>(n_fft);
  double e = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double f = static_cast<double>(k) * bin;
    if (f >= f_lo && f <= f_hi) e += p[k];
  }
  return e;
}

struct Moments {
  double m1, m2, m3, m4;
};

// Direct-summation spectral moments over power treated as a mass function.
inline Moments direct_moments(const std::vector<double>& power,
                              double bin_hz) {
  double total = 0.0;
  for (double p : power) total += p;
  double m1 = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k)
    m1 += static_cast<double>(k) * bin_hz * power[k] / total;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double d = static_cast<double>(k) * bin_hz - m1;
    const double w = power[k] / total;
    c2 += d * d * w;
    c3 += d * d * d * w;
    c4 += d * d * d * d * w;
  }
  const double sd = std::sqrt(c2);
  return {m1, sd, c3 / (c2 * sd), c4 / (c2 * c2) - 3.0};
}

// 3x3 normal equations for y = a0 + a1 t + a2 t^2 over t = 0..18, solved by
// Gaussian elimination with partial pivoting.
inline std::array<double, 3> normal_equations_quadratic(
    const std::array<double, 19>& y) {
  double a[3][4] = {};
  for (int k = 0; k < 19; ++k) {
    const double t = k;
    const double row[3] = {1.0, t, t * t};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
      a[i][3] += row[i] * y[static_cast<std::size_t>(k)];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int j = 0; j < 4; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

namespace detail {

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace detail

// P(T > t) for Student's t by numeric integration. The substitution
// x = sqrt(df) * tan(phi) maps the infinite tail onto a finite interval with
// integrand C * sqrt(df) * cos^{df-1}(phi), which adaptive Simpson handles
// to ~1e-12.
inline double t_sf_by_integration(double t, double df) {
  if (t < 0.0) return 1.0 - t_sf_by_integration(-t, df);
  const double log_c = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                       0.5 * std::log(df * M_PI);
  const double c = std::exp(log_c) * std::sqrt(df);
  const double phi0 = std::atan(t / std::sqrt(df));
  auto integrand = [df, c](double phi) {
    return c * std::pow(std::cos(phi), df - 1.0);
  };
  return detail::integrate(integrand, phi0, 0.5 * M_PI, 1e-14);
}

inline double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double sample_sd(const std::vector<double>& x) {
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// Biased autocorrelation at lags 0..max_lag.
inline std::vector<double> autocorrelation(const std::vector<double>& x,
                                           int max_lag) {
  std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int lag = 0; lag <= max_lag; ++lag)
    for (std::size_t n = static_cast<std::size_t>(lag); n < x.size(); ++n)
      r[static_cast<std::size_t>(lag)] +=
          x[n] * x[n - static_cast<std::size_t>(lag)];
  return r;
}

}  // namespace oracles

#endif  // SONOLAB_TESTS_ORACLES_HPP
