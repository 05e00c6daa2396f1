// sonolab/spectrum.hpp
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

#ifndef SONOLAB_SPECTRUM_HPP
#define SONOLAB_SPECTRUM_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sonolab/audio.hpp"
#include "sonolab/parallel.hpp"
#include "sonolab/textgrid.hpp"

namespace sonolab {

/// Welch-averaged one-sided power spectrum. power[k] is |X[k]|^2 averaged
/// over frames, for frequency k * bin_hz, k = 0..n_fft/2.
struct AveragedSpectrum {
  std::vector<double> power;
  double bin_hz = 0.0;
  int n_frames_averaged = 0;

  double nyquist_hz() const {
    return bin_hz * static_cast<double>(power.size() - 1);
  }
};

struct SpectrumConfig {
  double window_ms = 20.0;   // Hamming analysis window
  double overlap = 0.5;      // fraction of window overlapped
  double span_lo = 0.10;     // frames are drawn from this central part
  double span_hi = 0.90;     //   of the segment only
  bool exclude_dc = false;   // drop bin 0 before computing moments
};

/// First four standardized moments of the power spectrum treated as a mass
/// distribution over frequency, plus segment duration.
struct SpectralMoments {
  double m1_cog = 0.0;       // Hz
  double m2_sd = 0.0;        // Hz
  double m3_skewness = 0.0;  // dimensionless
  double m4_kurtosis = 0.0;  // excess (Gaussian shape -> 0)
  double duration_ms = 0.0;
};

/// Hamming-windowed frames at the configured hop across the central span of
/// the segment, each zero-padded to the next power of two, magnitude-squared
/// and averaged bin-wise. A span shorter than one window falls back to a
/// single full-span window; spans under 64 samples are SegmentTooShort.
AveragedSpectrum averaged_spectrum(const AudioClip& clip, const Segment& seg,
                                   const SpectrumConfig& cfg = {},
                                   Exec exec = Exec::parallel);

struct MomentOptions {
  bool exclude_dc = false;
  std::optional<double> max_hz;  // optional band ceiling, off by default
};

/// Moments only; duration_ms is left 0 (filled by callers that have the
/// segment). Throws EmptySpectrum on all-zero power and DegenerateSpectrum
/// when m2 == 0 (point mass) makes m3/m4 undefined.
SpectralMoments spectral_moments(const AveragedSpectrum& spec,
                                 const MomentOptions& opt = {});

/// (end_s - start_s) * 1000.
double duration_ms(const Segment& seg);

}  // namespace sonolab

#endif  // SONOLAB_SPECTRUM_HPP
