// formants.cpp
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

#include "sonolab/formants.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "sonolab/errors.hpp"
#include "sonolab/polyroots.hpp"

namespace sonolab {
namespace {

constexpr double kContextPadS = 0.025;
constexpr double kPreemphHz = 50.0;
constexpr double kEdgeMarginHz = 50.0;

// Hamming-windowed sinc low-pass, odd length, unit DC gain.
std::vector<double> lowpass_taps(double cutoff_hz, double rate, int n_taps) {
  std::vector<double> h(static_cast<size_t>(n_taps));
  const int mid = (n_taps - 1) / 2;
  const double fc = cutoff_hz / rate;  // cycles per sample
  double sum = 0.0;
  for (int i = 0; i < n_taps; ++i) {
    const int k = i - mid;
    double v;
    if (k == 0)
      v = 2.0 * fc;
    else
      v = std::sin(2.0 * M_PI * fc * k) / (M_PI * k);
    v *= 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n_taps - 1));
    h[static_cast<size_t>(i)] = v;
    sum += v;
  }
  for (double& v : h) v /= sum;
  return h;
}

std::vector<double> gaussian_window(int n) {
  // Edges at 2.5 sigma; close to the usual Gaussian analysis taper.
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  if (n > 1) {
    for (int i = 0; i < n; ++i) {
      const double x = 2.5 * (2.0 * i - (n - 1)) / (n - 1);
      w[static_cast<size_t>(i)] = std::exp(-0.5 * x * x);
    }
  }
  return w;
}

}  // namespace

Conditioned preprocess(const AudioClip& clip, const Segment& seg,
                       const FormantConfig& cfg) {
  if (clip.sample_rate <= 0)
    throw Error(Errc::non_finite_input, "sample rate must be positive");
  if (!(seg.end_s > seg.start_s))
    throw Error(Errc::negative_duration,
                "segment '" + seg.label + "' has non-positive duration");

  const double clip_end = clip.duration_s();
  const double pad_start = std::max(0.0, seg.start_s - kContextPadS);
  const double pad_end = std::min(clip_end, seg.end_s + kContextPadS);
  long i0 = sample_index(pad_start, clip.sample_rate);
  long i1 = sample_index(pad_end, clip.sample_rate);
  const long n_total = static_cast<long>(clip.samples.size());
  i0 = std::clamp(i0, 0L, n_total);
  i1 = std::clamp(i1, 0L, n_total);
  if (i1 - i0 < 2)
    throw Error(Errc::segment_too_short,
                "segment '" + seg.label + "' leaves no samples to analyze");

  std::vector<double> x(clip.samples.begin() + i0, clip.samples.begin() + i1);
  for (double v : x)
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_input, "non-finite sample in segment");

  int rate = clip.sample_rate;
  const int decim =
      std::max(1, static_cast<int>(rate / (2.0 * cfg.ceiling_hz)));
  if (decim > 1) {
    const int taps = 255;
    const double dec_nyq = 0.5 * rate / decim;
    const std::vector<double> h =
        lowpass_taps(std::min(cfg.ceiling_hz, dec_nyq), rate, taps);
    const int mid = (taps - 1) / 2;
    const long n = static_cast<long>(x.size());
    std::vector<double> y(x.size(), 0.0);
    for (long i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < taps; ++k) {
        const long j = i + mid - k;
        if (j >= 0 && j < n) acc += h[static_cast<size_t>(k)] * x[static_cast<size_t>(j)];
      }
      y[static_cast<size_t>(i)] = acc;
    }
    std::vector<double> d;
    d.reserve(x.size() / static_cast<size_t>(decim) + 1);
    for (long i = 0; i < n; i += decim) d.push_back(y[static_cast<size_t>(i)]);
    x = std::move(d);
    rate = rate / decim;
  }

  const double alpha = std::exp(-2.0 * M_PI * kPreemphHz / rate);
  for (size_t i = x.size(); i-- > 1;) x[i] -= alpha * x[i - 1];

  const int frame_n = static_cast<int>(std::lround(cfg.frame_ms / 1000.0 * rate));
  if (static_cast<long>(x.size()) < frame_n)
    throw Error(Errc::segment_too_short,
                "segment '" + seg.label + "' shorter than one analysis window");

  Conditioned out;
  out.samples = std::move(x);
  out.rate = rate;
  out.t0 = static_cast<double>(i0) / clip.sample_rate;
  return out;
}

BurgResult burg_lpc(const std::vector<double>& frame, int order) {
  const long n = static_cast<long>(frame.size());
  if (order < 0) throw Error(Errc::non_finite_input, "negative LPC order");
  if (n <= order)
    throw Error(Errc::segment_too_short,
                "frame of " + std::to_string(n) +
                    " samples cannot support order " + std::to_string(order));

  double energy = 0.0;
  for (double v : frame) {
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_input, "non-finite sample in LPC frame");
    energy += v * v;
  }

  BurgResult out;
  out.residual = energy;
  if (order == 0) return out;

  std::vector<double> f = frame, b = frame;
  std::vector<double> a(static_cast<size_t>(order), 0.0);
  std::vector<double> tmp(static_cast<size_t>(order), 0.0);
  double err = energy;

  for (int m = 0; m < order; ++m) {
    double num = 0.0, den = 0.0;
    for (long i = m + 1; i < n; ++i) {
      num += f[static_cast<size_t>(i)] * b[static_cast<size_t>(i - 1)];
      den += f[static_cast<size_t>(i)] * f[static_cast<size_t>(i)] +
             b[static_cast<size_t>(i - 1)] * b[static_cast<size_t>(i - 1)];
    }
    if (!(den > 1e-300))
      throw Error(Errc::numerical_failure,
                  "Burg denominator underflow at order " + std::to_string(m + 1));
    const double k = -2.0 * num / den;

    for (int i = 0; i < m; ++i)
      tmp[static_cast<size_t>(i)] =
          a[static_cast<size_t>(i)] + k * a[static_cast<size_t>(m - 1 - i)];
    for (int i = 0; i < m; ++i) a[static_cast<size_t>(i)] = tmp[static_cast<size_t>(i)];
    a[static_cast<size_t>(m)] = k;

    for (long i = n - 1; i > m; --i) {
      const double fi = f[static_cast<size_t>(i)];
      const double bi = b[static_cast<size_t>(i - 1)];
      f[static_cast<size_t>(i)] = fi + k * bi;
      b[static_cast<size_t>(i)] = bi + k * fi;
    }
    err *= 1.0 - k * k;
  }

  out.coeffs = std::move(a);
  out.residual = err;
  return out;
}

FormantFrame roots_to_formants(const std::vector<double>& coeffs, double rate,
                               double ceiling_hz, double max_bandwidth_hz) {
  const size_t p = coeffs.size();
  // A(z) roots in z: z^p + a1 z^(p-1) + ... + ap = 0, low-order first.
  std::vector<double> poly(p + 1);
  for (size_t i = 0; i < p; ++i) poly[i] = coeffs[p - 1 - i];
  poly[p] = 1.0;

  const auto roots = poly_roots(poly, 1e-12, 100);

  FormantFrame out;
  for (const auto& r : roots) {
    if (r.imag() <= 0.0) continue;
    const double mag = std::abs(r);
    if (!(mag > 0.0) || mag >= 1.0) continue;
    const double f = std::atan2(r.imag(), r.real()) * rate / (2.0 * M_PI);
    const double bw = -std::log(mag) * rate / M_PI;
    if (f <= kEdgeMarginHz || f >= ceiling_hz - kEdgeMarginHz) continue;
    if (bw >= max_bandwidth_hz) continue;
    out.formants.push_back({f, bw});
  }
  std::sort(out.formants.begin(), out.formants.end(),
            [](const FormantFrame::Peak& a, const FormantFrame::Peak& b) {
              return a.frequency_hz < b.frequency_hz;
            });
  if (out.formants.size() < 4)
    throw Error(Errc::too_few_formants,
                "only " + std::to_string(out.formants.size()) +
                    " formant candidates survived");
  if (out.formants.size() > 5) out.formants.resize(5);
  return out;
}

FormantTrack track(const AudioClip& clip, const Segment& seg,
                   const FormantConfig& cfg, Exec exec) {
  const Conditioned cond = preprocess(clip, seg, cfg);
  const int frame_n =
      static_cast<int>(std::lround(cfg.frame_ms / 1000.0 * cond.rate));
  const double half_w = 0.5 * frame_n / cond.rate;
  const double hop_s = cfg.hop_ms / 1000.0;
  const double dur = seg.end_s - seg.start_s;

  // Frame centers step across the whole segment; edge frames slide inward
  // when the context padding was cut short at a clip boundary.
  std::vector<double> centers;
  for (double c = seg.start_s; c <= seg.end_s + 1e-9; c += hop_s)
    centers.push_back(c);
  const int n_frames = static_cast<int>(centers.size());
  if (n_frames < 2)
    throw Error(Errc::tracking_failed,
                "segment '" + seg.label + "' yields fewer than 2 frames");

  const std::vector<double> win = gaussian_window(frame_n);
  const double cond_end = cond.t0 + static_cast<double>(cond.samples.size()) / cond.rate;

  std::vector<std::array<double, 4>> raw(static_cast<size_t>(n_frames));
  std::vector<char> present(static_cast<size_t>(n_frames), 0);

  auto do_frame = [&](int j) {
    double c = centers[static_cast<size_t>(j)];
    c = std::clamp(c, cond.t0 + half_w, cond_end - half_w);
    long s0 = static_cast<long>(std::lround((c - half_w - cond.t0) * cond.rate));
    s0 = std::clamp(s0, 0L,
                    static_cast<long>(cond.samples.size()) - frame_n);
    std::vector<double> frame(static_cast<size_t>(frame_n));
    for (int i = 0; i < frame_n; ++i)
      frame[static_cast<size_t>(i)] =
          cond.samples[static_cast<size_t>(s0 + i)] * win[static_cast<size_t>(i)];
    try {
      const BurgResult lpc = burg_lpc(frame, cfg.order);
      const FormantFrame ff = roots_to_formants(
          lpc.coeffs, cond.rate, cfg.ceiling_hz, cfg.max_bandwidth_hz);
      for (int k = 0; k < 4; ++k)
        raw[static_cast<size_t>(j)][static_cast<size_t>(k)] =
            ff.formants[static_cast<size_t>(k)].frequency_hz;
      present[static_cast<size_t>(j)] = 1;
    } catch (const Error&) {
      present[static_cast<size_t>(j)] = 0;  // frame marked missing
    }
  };

  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < n_frames; ++j) do_frame(j);
  } else {
    for (int j = 0; j < n_frames; ++j) do_frame(j);
  }

  int n_present = 0;
  for (char p : present) n_present += p;
  if (n_present * 2 < n_frames)
    throw Error(Errc::tracking_failed,
                std::to_string(n_frames - n_present) + " of " +
                    std::to_string(n_frames) + " frames missing in '" +
                    seg.label + "'");

  // Median-3 smoothing over present neighbors, then linear bridging of
  // missing frames along the frame axis.
  std::vector<std::array<double, 4>> smooth(static_cast<size_t>(n_frames));
  for (int j = 0; j < n_frames; ++j) {
    if (!present[static_cast<size_t>(j)]) continue;
    for (int k = 0; k < 4; ++k) {
      std::vector<double> nb;
      for (int d = -1; d <= 1; ++d) {
        const int jj = j + d;
        if (jj >= 0 && jj < n_frames && present[static_cast<size_t>(jj)])
          nb.push_back(raw[static_cast<size_t>(jj)][static_cast<size_t>(k)]);
      }
      std::sort(nb.begin(), nb.end());
      smooth[static_cast<size_t>(j)][static_cast<size_t>(k)] =
          nb[nb.size() / 2];
    }
  }
  for (int k = 0; k < 4; ++k) {
    int prev = -1;
    for (int j = 0; j < n_frames; ++j) {
      if (!present[static_cast<size_t>(j)]) continue;
      if (prev < 0) {
        for (int jj = 0; jj < j; ++jj)
          smooth[static_cast<size_t>(jj)][static_cast<size_t>(k)] =
              smooth[static_cast<size_t>(j)][static_cast<size_t>(k)];
      } else if (prev + 1 < j) {
        const double v0 = smooth[static_cast<size_t>(prev)][static_cast<size_t>(k)];
        const double v1 = smooth[static_cast<size_t>(j)][static_cast<size_t>(k)];
        for (int jj = prev + 1; jj < j; ++jj) {
          const double w = static_cast<double>(jj - prev) / (j - prev);
          smooth[static_cast<size_t>(jj)][static_cast<size_t>(k)] =
              v0 + w * (v1 - v0);
        }
      }
      prev = j;
    }
    for (int jj = prev + 1; jj < n_frames; ++jj)
      smooth[static_cast<size_t>(jj)][static_cast<size_t>(k)] =
          smooth[static_cast<size_t>(prev)][static_cast<size_t>(k)];
  }

  FormantTrack out;
  for (int i = 0; i < FormantTrack::kGridPoints; ++i) {
    const double t = seg.start_s + FormantTrack::grid_position(i) * dur;
    double pos = (t - centers[0]) / hop_s;
    pos = std::clamp(pos, 0.0, static_cast<double>(n_frames - 1));
    const int j0 = static_cast<int>(pos);
    const int j1 = std::min(j0 + 1, n_frames - 1);
    const double w = pos - j0;
    auto& row = out.values[static_cast<size_t>(i)];
    for (int k = 0; k < 4; ++k)
      row[static_cast<size_t>(k)] =
          (1.0 - w) * smooth[static_cast<size_t>(j0)][static_cast<size_t>(k)] +
          w * smooth[static_cast<size_t>(j1)][static_cast<size_t>(k)];
    std::sort(row.begin(), row.end());
  }
  return out;
}

}  // namespace sonolab
