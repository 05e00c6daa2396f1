// sonolab/synthkit.hpp
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
// Ground-truth generators: synthesized vowels with known formants, spectra
// with closed-form moments, and planted-effect feature corpora. Everything
// here is computed by direct arithmetic, independent of the analysis
// modules it is used to test.

#ifndef SONOLAB_SYNTHKIT_HPP
#define SONOLAB_SYNTHKIT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sonolab/audio.hpp"
#include "sonolab/records.hpp"
#include "sonolab/spectrum.hpp"
#include "sonolab/stats.hpp"
#include "sonolab/textgrid.hpp"

namespace sonolab {

struct VowelSpec {
  double f0 = 120.0;
  struct Resonance {
    double frequency_hz;
    double bandwidth_hz;
  };
  std::vector<Resonance> formants;
  // Optional per-formant quadratic frequency trajectory in grid-step units
  // (t runs -1..19 across the token, so t = 0 at the 5% point). When
  // non-empty it must match formants in length; the constant term wins over
  // the Resonance frequency.
  struct Traj {
    double a0, a1, a2;
  };
  std::vector<Traj> trajectory;
  double duration_s = 0.2;
  int sample_rate = 44100;
};

/// Impulse train at f0 through a cascade of second-order resonators,
/// peak-normalized to 0.9. Throws UnstableResonator when any pole radius
/// reaches 1.
AudioClip synth_vowel(const VowelSpec& spec);

struct EnvelopeSpec {
  enum class Kind { flat, gaussian, point };
  Kind kind = Kind::flat;
  double f_lo = 0.0, f_hi = 4000.0;  // flat
  double mu = 800.0, sigma = 200.0;  // gaussian
  double f = 1000.0;                 // point
  int n_bins = 512;
  double nyquist_hz = 8000.0;
};

/// Analytic power envelope sampled per bin; no signal involved. Throws
/// OutOfBand when the envelope leaves [0, nyquist].
AveragedSpectrum synth_spectrum(const EnvelopeSpec& spec);

/// Planted-effect corpus over the full variety x stress x segment x vowel
/// design. Effects are treatment-coded terms per DV on the analysis scale
/// set by log_policy; records get cell mean + per-speaker offset + Gaussian
/// noise, then map back to raw scale.
struct CorpusDesign {
  int n_per_cell = 16;
  int speakers_per_variety = 4;
  std::uint64_t seed = 1;
  LogPolicy log_policy;
  // dv -> term -> coefficient; "(Intercept)" is the reference-cell mean.
  std::map<std::string, std::map<std::string, double>> effects;
  std::map<std::string, double> noise_sd;    // dv -> sd, analysis scale
  std::map<std::string, double> speaker_sd;  // dv -> sd of speaker offsets

  /// Defaults carry a realistic effect structure for all 21 numeric columns.
  static CorpusDesign realistic();
};

struct SynthCorpus {
  std::vector<FeatureRecord> records;
  CorpusDesign design;
  std::string rng = "mt19937_64";
};

SynthCorpus synth_corpus(const CorpusDesign& design);

/// The planted mean of a DV (analysis scale) for one cell, by treatment
/// matching of effect terms; the recovery tests compare model estimates
/// against differences of these.
double planted_cell_mean(const CorpusDesign& design, const std::string& dv,
                         const std::string& variety, const std::string& stress,
                         const std::string& segment, const std::string& vowel);

/// Human-readable truth dump: seed, rng, effects, noise.
std::string serialize_truth(const SynthCorpus& corpus);

/// One audio demo token: a sonorant-labeled span synthesized with low
/// narrowband resonances followed by a vowel span with known formant
/// trajectories, plus phone/word annotation segments.
struct DemoToken {
  AudioClip clip;
  std::vector<Segment> phones;
  std::vector<Segment> words;
  std::string speaker;
  Variety variety = Variety::AG;
  Stress stress = Stress::stressed;
  std::string keyword;
  std::string segment_label;  // l, m, n, r
  std::string vowel_label;    // a, i
  VowelSpec sonorant_spec;
  VowelSpec vowel_spec;
};

/// Deterministic demo corpus for end-to-end pipeline tests; parameters
/// depend only on (index, seed).
std::vector<DemoToken> demo_corpus(int n_tokens, std::uint64_t seed);

/// Truth sidecar for one demo token (targets the pipeline should recover).
std::string serialize_demo_truth(const DemoToken& token);

}  // namespace sonolab

#endif  // SONOLAB_SYNTHKIT_HPP
