// sonolab/formants.hpp
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

#ifndef SONOLAB_FORMANTS_HPP
#define SONOLAB_FORMANTS_HPP

#include <array>
#include <vector>

#include "sonolab/audio.hpp"
#include "sonolab/parallel.hpp"
#include "sonolab/textgrid.hpp"

namespace sonolab {

struct FormantConfig {
  double ceiling_hz = 5500.0;    // analysis ceiling (female default)
  int order = 10;                // LPC order at the decimated rate
  double frame_ms = 25.0;        // Gaussian analysis window
  double hop_ms = 6.25;          // frame step
  double max_bandwidth_hz = 400.0;
};

/// Formant candidates for one analysis frame, frequency-ascending.
struct FormantFrame {
  double time_s = 0.0;
  struct Peak {
    double frequency_hz;
    double bandwidth_hz;
  };
  std::vector<Peak> formants;  // up to 5 kept
};

/// F1..F4 sampled at 19 relative positions, 5% to 95% in 5% steps.
struct FormantTrack {
  static constexpr int kGridPoints = 19;
  std::array<std::array<double, 4>, kGridPoints> values{};

  static double grid_position(int i) { return 0.05 * (i + 1); }
};

/// Segment samples conditioned for LPC: sliced with context padding,
/// low-pass filtered and decimated to about 2 * ceiling_hz, pre-emphasized
/// with alpha = exp(-2*pi*50/rate).
struct Conditioned {
  std::vector<double> samples;
  int rate = 0;      // decimated rate
  double t0 = 0.0;   // clip time of samples[0]
};

Conditioned preprocess(const AudioClip& clip, const Segment& seg,
                       const FormantConfig& cfg = {});

struct BurgResult {
  std::vector<double> coeffs;  // a1..ap of A(z) = 1 + a1 z^-1 + ... + ap z^-p
  double residual = 0.0;       // final prediction error energy
};

/// Burg-recursion LPC. Order 0 returns no coefficients with residual equal
/// to the frame energy. Throws NumericalFailure on denominator underflow.
BurgResult burg_lpc(const std::vector<double>& frame, int order);

/// Roots of the predictor polynomial mapped to (frequency, bandwidth)
/// candidates, gated to 50 < f < ceiling-50 and b < max_bandwidth, sorted
/// ascending. Fewer than 4 survivors is TooFewFormants.
FormantFrame roots_to_formants(const std::vector<double>& coeffs, double rate,
                               double ceiling_hz = 5500.0,
                               double max_bandwidth_hz = 400.0);

/// Full tracker: frames every hop_ms across the segment, per-frame LPC and
/// root picking, median-3 smoothing, interpolation onto the 19-point grid.
/// More than 50% missing frames is TrackingFailed.
FormantTrack track(const AudioClip& clip, const Segment& seg,
                   const FormantConfig& cfg = {}, Exec exec = Exec::parallel);

}  // namespace sonolab

#endif  // SONOLAB_FORMANTS_HPP
