// spectrum.cpp
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

#include "sonolab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "sonolab/errors.hpp"
#include "sonolab/fft.hpp"

namespace sonolab {
namespace {

std::vector<double> hamming(int n) {
  std::vector<double> w(n, 1.0);
  if (n > 1) {
    const double c = 2.0 * M_PI / (n - 1);
    for (int i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(c * i);
  }
  return w;
}

}  // namespace

AveragedSpectrum averaged_spectrum(const AudioClip& clip, const Segment& seg,
                                   const SpectrumConfig& cfg, Exec exec) {
  if (clip.sample_rate <= 0)
    throw Error(Errc::non_finite_input, "sample rate must be positive");
  if (!(seg.end_s > seg.start_s))
    throw Error(Errc::negative_duration,
                "segment '" + seg.label + "' has non-positive duration");

  const double rate = clip.sample_rate;
  const double dur = seg.end_s - seg.start_s;
  const long i0 = sample_index(seg.start_s + cfg.span_lo * dur, clip.sample_rate);
  const long i1 = sample_index(seg.start_s + cfg.span_hi * dur, clip.sample_rate);
  const long n_total = static_cast<long>(clip.samples.size());
  const long lo = std::clamp(i0, 0L, n_total);
  const long hi = std::clamp(i1, 0L, n_total);
  const long span = hi - lo;
  if (span < 64)
    throw Error(Errc::segment_too_short,
                "central span of '" + seg.label + "' is " +
                    std::to_string(span) + " samples, need at least 64");

  for (long i = lo; i < hi; ++i)
    if (!std::isfinite(clip.samples[static_cast<size_t>(i)]))
      throw Error(Errc::non_finite_input,
                  "non-finite sample at index " + std::to_string(i));

  int w = static_cast<int>(std::lround(cfg.window_ms / 1000.0 * rate));
  int hop = static_cast<int>(std::lround(w * (1.0 - cfg.overlap)));
  int n_frames;
  if (span < w || hop <= 0) {
    // Too short for even one full window: analyze the whole span once.
    w = static_cast<int>(span);
    hop = w;
    n_frames = 1;
  } else {
    n_frames = static_cast<int>((span - w) / hop) + 1;
  }

  const std::vector<double> win = hamming(w);
  const size_t n_fft = next_pow2(static_cast<size_t>(w));
  const size_t n_bins = n_fft / 2 + 1;

  // Each frame gets its own slot so the parallel path stays bit-identical
  // to the serial one; the sum over frames runs in frame order afterwards.
  std::vector<std::vector<double>> per_frame(
      static_cast<size_t>(n_frames));
  auto do_frame = [&](int f) {
    std::vector<double> frame(static_cast<size_t>(w));
    const long base = lo + static_cast<long>(f) * hop;
    for (int i = 0; i < w; ++i)
      frame[static_cast<size_t>(i)] =
          clip.samples[static_cast<size_t>(base + i)] *
          win[static_cast<size_t>(i)];
    per_frame[static_cast<size_t>(f)] = power_spectrum(frame, n_fft);
  };

  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int f = 0; f < n_frames; ++f) do_frame(f);
  } else {
    for (int f = 0; f < n_frames; ++f) do_frame(f);
  }

  AveragedSpectrum out;
  out.power.assign(n_bins, 0.0);
  for (int f = 0; f < n_frames; ++f)
    for (size_t k = 0; k < n_bins; ++k)
      out.power[k] += per_frame[static_cast<size_t>(f)][k];
  const double inv = 1.0 / n_frames;
  for (double& p : out.power) p *= inv;
  out.bin_hz = rate / static_cast<double>(n_fft);
  out.n_frames_averaged = n_frames;
  return out;
}

SpectralMoments spectral_moments(const AveragedSpectrum& spec,
                                 const MomentOptions& opt) {
  const size_t n = spec.power.size();
  size_t k0 = opt.exclude_dc ? 1 : 0;
  size_t k1 = n;
  if (opt.max_hz && spec.bin_hz > 0.0) {
    const double kmax = *opt.max_hz / spec.bin_hz;
    k1 = std::min(n, static_cast<size_t>(std::floor(kmax)) + 1);
  }
  if (k0 >= k1) throw Error(Errc::empty_spectrum, "no bins in range");

  double total = 0.0;
  for (size_t k = k0; k < k1; ++k) {
    const double p = spec.power[k];
    if (!(p >= 0.0) || !std::isfinite(p))
      throw Error(Errc::non_finite_input,
                  "invalid power at bin " + std::to_string(k));
    total += p;
  }
  if (total <= 0.0)
    throw Error(Errc::empty_spectrum, "total power is zero");

  double m1 = 0.0;
  for (size_t k = k0; k < k1; ++k)
    m1 += (static_cast<double>(k) * spec.bin_hz) * (spec.power[k] / total);

  double v2 = 0.0, v3 = 0.0, v4 = 0.0;
  for (size_t k = k0; k < k1; ++k) {
    const double d = static_cast<double>(k) * spec.bin_hz - m1;
    const double p = spec.power[k] / total;
    const double d2 = d * d;
    v2 += d2 * p;
    v3 += d2 * d * p;
    v4 += d2 * d2 * p;
  }
  const double sd = std::sqrt(v2);
  if (!(sd > 0.0))
    throw Error(Errc::degenerate_spectrum,
                "spectral variance is zero; skewness and kurtosis undefined");

  SpectralMoments out;
  out.m1_cog = m1;
  out.m2_sd = sd;
  out.m3_skewness = v3 / (v2 * sd);
  out.m4_kurtosis = v4 / (v2 * v2) - 3.0;
  return out;
}

double duration_ms(const Segment& seg) {
  if (!(seg.end_s > seg.start_s))
    throw Error(Errc::negative_duration,
                "segment '" + seg.label + "' has non-positive duration");
  return (seg.end_s - seg.start_s) * 1000.0;
}

}  // namespace sonolab
