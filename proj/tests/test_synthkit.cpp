// test_synthkit.cpp
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

#include "sonolab/synthkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sonolab/errors.hpp"
#include "sonolab/records.hpp"
#include "sonolab/spectrum.hpp"

using namespace sonolab;

namespace {

VowelSpec one_formant(double f, double bw) {
  VowelSpec s;
  s.f0 = 125.0;
  s.duration_s = 0.3;
  s.formants = {{f, bw}};
  return s;
}

bool same_samples(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("synth_vowel: resonance dominates the spectrum at the right bin") {
  // f0 = 125 puts the eighth harmonic exactly on the 1000 Hz resonance.
  const AudioClip clip = synth_vowel(one_formant(1000.0, 50.0));
  REQUIRE(clip.sample_rate == 44100);
  REQUIRE(clip.samples.size() == 13230);

  double peak = 0.0;
  for (double v : clip.samples) peak = std::max(peak, std::fabs(v));
  CHECK(peak == doctest::Approx(0.9).epsilon(1e-12));

  const std::vector<double> head(clip.samples.begin(),
                                 clip.samples.begin() + 8192);
  const std::vector<double> power = oracles::naive_power_spectrum(head, 8192);
  const double bin_hz = 44100.0 / 8192.0;
  size_t k_max = 0;
  for (size_t k = 1; k < power.size(); ++k)
    if (power[k] > power[k_max]) k_max = k;
  CHECK(std::fabs(static_cast<double>(k_max) * bin_hz - 1000.0) <=
        2.0 * bin_hz);
}

TEST_CASE("synth_vowel: no formants leaves a bare impulse train") {
  VowelSpec s;
  s.f0 = 441.0;
  s.duration_s = 0.1;
  const AudioClip clip = synth_vowel(s);
  REQUIRE(clip.samples.size() == 4410);

  std::vector<size_t> hits;
  for (size_t i = 0; i < clip.samples.size(); ++i) {
    if (clip.samples[i] != 0.0) {
      CHECK(clip.samples[i] == 0.9);
      hits.push_back(i);
    }
  }
  // One pulse per period of ~100 samples, starting at sample 0.  The phase
  // accumulator carries rounding, so a period may land one sample early.
  REQUIRE(hits.size() == 45);
  CHECK(hits.front() == 0);
  for (size_t k = 1; k < hits.size(); ++k) {
    const size_t gap = hits[k] - hits[k - 1];
    CHECK(gap >= 99);
    CHECK(gap <= 100);
  }
  CHECK(hits.back() >= 4399);
  CHECK(hits.back() <= 4400);
}

TEST_CASE("synth_vowel: constant trajectory matches the trajectory-free clip") {
  VowelSpec plain;
  plain.f0 = 140.0;
  plain.duration_s = 0.12;
  plain.formants = {{500.0, 60.0}, {1500.0, 90.0}};

  VowelSpec moving = plain;
  moving.trajectory = {{500.0, 0.0, 0.0}, {1500.0, 0.0, 0.0}};

  const AudioClip a = synth_vowel(plain);
  const AudioClip b = synth_vowel(moving);
  CHECK(same_samples(a.samples, b.samples));
}

TEST_CASE("synth_vowel: rejects unstable or out-of-band requests") {
  CHECK_THROWS_WITH_AS(synth_vowel(one_formant(1000.0, 0.0)),
                       doctest::Contains("UnstableResonator"), Error);
  CHECK_THROWS_WITH_AS(synth_vowel(one_formant(1000.0, -5.0)),
                       doctest::Contains("UnstableResonator"), Error);
  CHECK_THROWS_WITH_AS(synth_vowel(one_formant(22050.0, 60.0)),
                       doctest::Contains("OutOfBand"), Error);
  CHECK_THROWS_WITH_AS(synth_vowel(one_formant(-300.0, 60.0)),
                       doctest::Contains("OutOfBand"), Error);

  VowelSpec bad = one_formant(1000.0, 60.0);
  bad.f0 = 0.0;
  CHECK_THROWS_WITH_AS(synth_vowel(bad), doctest::Contains("NonFiniteInput"),
                       Error);

  VowelSpec desc;
  desc.formants = {{1500.0, 90.0}, {500.0, 60.0}};
  CHECK_THROWS_WITH_AS(synth_vowel(desc), doctest::Contains("must ascend"),
                       Error);

  VowelSpec extra = one_formant(1000.0, 60.0);
  extra.trajectory = {{1000.0, 0.0, 0.0}, {2000.0, 0.0, 0.0}};
  CHECK_THROWS_WITH_AS(synth_vowel(extra), doctest::Contains("trajectory"),
                       Error);

  // f = 100 - 10 t reaches zero inside the token.
  VowelSpec dive = one_formant(100.0, 80.0);
  dive.trajectory = {{100.0, -10.0, 0.0}};
  CHECK_THROWS_WITH_AS(synth_vowel(dive), doctest::Contains("OutOfBand"),
                       Error);
}

TEST_CASE("synth_spectrum: point envelope fills exactly one bin") {
  EnvelopeSpec spec;
  spec.kind = EnvelopeSpec::Kind::point;
  spec.f = 1000.0;
  spec.n_bins = 512;
  spec.nyquist_hz = 8000.0;
  const AveragedSpectrum sp = synth_spectrum(spec);

  REQUIRE(sp.power.size() == 512);
  CHECK(sp.bin_hz == 8000.0 / 511.0);
  CHECK(sp.n_frames_averaged == 1);

  // 1000 / bin_hz = 63.875, so the mass lands on bin 64.
  double total = 0.0;
  for (double p : sp.power) total += p;
  CHECK(total == 1.0);
  CHECK(sp.power[64] == 1.0);
}

TEST_CASE("synth_spectrum: flat band has discrete-uniform moments") {
  EnvelopeSpec spec;
  spec.kind = EnvelopeSpec::Kind::flat;
  spec.f_lo = 0.0;
  spec.f_hi = 4000.0;
  spec.n_bins = 512;
  spec.nyquist_hz = 8000.0;
  const AveragedSpectrum sp = synth_spectrum(spec);

  // f_hi / bin_hz = 255.5, so bins 0..255 carry mass: N = 256 points.
  const double bin_hz = 8000.0 / 511.0;
  for (int k = 0; k < 512; ++k)
    CHECK(sp.power[static_cast<size_t>(k)] == (k <= 255 ? 1.0 : 0.0));

  const double n = 256.0;
  const SpectralMoments m = spectral_moments(sp);
  CHECK(m.m1_cog ==
        doctest::Approx(bin_hz * (n - 1.0) / 2.0).epsilon(1e-12));
  CHECK(m.m2_sd ==
        doctest::Approx(bin_hz * std::sqrt((n * n - 1.0) / 12.0))
            .epsilon(1e-12));
  CHECK(m.m3_skewness == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(m.m4_kurtosis ==
        doctest::Approx(-6.0 * (n * n + 1.0) / (5.0 * (n * n - 1.0)))
            .epsilon(1e-10));
}

TEST_CASE("synth_spectrum: flat band includes exact bin boundaries") {
  EnvelopeSpec spec;
  spec.kind = EnvelopeSpec::Kind::flat;
  spec.n_bins = 101;
  spec.nyquist_hz = 5000.0;
  const double bin_hz = 5000.0 / 100.0;
  spec.f_lo = 10.0 * bin_hz;
  spec.f_hi = 20.0 * bin_hz;
  const AveragedSpectrum sp = synth_spectrum(spec);
  for (int k = 0; k < 101; ++k)
    CHECK(sp.power[static_cast<size_t>(k)] ==
          (k >= 10 && k <= 20 ? 1.0 : 0.0));
}

TEST_CASE("synth_spectrum: mid-band gaussian is symmetric") {
  EnvelopeSpec spec;
  spec.kind = EnvelopeSpec::Kind::gaussian;
  spec.mu = 4000.0;
  spec.sigma = 500.0;
  spec.n_bins = 512;
  spec.nyquist_hz = 8000.0;
  const AveragedSpectrum sp = synth_spectrum(spec);

  // Bin k mirrors bin 511-k around mu.
  for (size_t k = 0; k < 256; ++k)
    CHECK(sp.power[k] == doctest::Approx(sp.power[511 - k])
                             .scale(1.0)
                             .epsilon(1e-10));

  const SpectralMoments m = spectral_moments(sp);
  CHECK(m.m1_cog == doctest::Approx(4000.0).epsilon(1e-9));
  CHECK(m.m3_skewness == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("synth_spectrum: rejects envelopes leaving the band") {
  EnvelopeSpec spec;
  spec.n_bins = 512;
  spec.nyquist_hz = 8000.0;

  spec.kind = EnvelopeSpec::Kind::flat;
  spec.f_lo = -5.0;
  spec.f_hi = 4000.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("OutOfBand"),
                       Error);
  spec.f_lo = 0.0;
  spec.f_hi = 8001.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("OutOfBand"),
                       Error);
  spec.f_lo = 3000.0;
  spec.f_hi = 2000.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("flat band"),
                       Error);

  spec.kind = EnvelopeSpec::Kind::gaussian;
  spec.mu = 9000.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("OutOfBand"),
                       Error);
  spec.mu = 800.0;
  spec.sigma = 0.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("OutOfBand"),
                       Error);

  spec.kind = EnvelopeSpec::Kind::point;
  spec.f = -1.0;
  CHECK_THROWS_WITH_AS(synth_spectrum(spec), doctest::Contains("OutOfBand"),
                       Error);

  EnvelopeSpec tiny;
  tiny.n_bins = 1;
  CHECK_THROWS_WITH_AS(synth_spectrum(tiny),
                       doctest::Contains("NonFiniteInput"), Error);
}

TEST_CASE("synth_corpus: zero noise hits planted cell means exactly") {
  CorpusDesign d;
  d.n_per_cell = 2;
  d.speakers_per_variety = 2;
  d.seed = 5;
  d.effects["m3_skew"] = {{"(Intercept)", 2.0},
                          {"m", 1.5},
                          {"CG:m", 0.25},
                          {"CG:unstressed:r", 3.0}};
  d.effects["duration_ms"] = {{"(Intercept)", 4.0}, {"r", -1.0}};
  d.effects["f1_a0"] = {{"(Intercept)", 500.0}, {"i", -60.0}};

  const SynthCorpus c = synth_corpus(d);
  REQUIRE(c.records.size() == 64);

  for (const auto& r : c.records) {
    const std::string v = to_string(r.variety);
    const std::string st = to_string(r.stress);
    CHECK(r.m3_skew ==
          planted_cell_mean(d, "m3_skew", v, st, r.segment, r.vowel));
    // duration_ms is planted on the log scale.
    CHECK(r.duration_ms ==
          std::exp(
              planted_cell_mean(d, "duration_ms", v, st, r.segment, r.vowel)));
    CHECK(r.contour[0][0] ==
          planted_cell_mean(d, "f1_a0", v, st, r.segment, r.vowel));
    CHECK(r.m4_kurt == 0.0);
    CHECK(r.n_frames_averaged == 5);
    CHECK(r.keyword == r.segment + r.vowel);
  }

  // Term matching: every ':'-part must name a level of this cell.
  CHECK(planted_cell_mean(d, "m3_skew", "CG", "unstressed", "r", "a") == 5.0);
  CHECK(planted_cell_mean(d, "m3_skew", "CG", "stressed", "m", "a") == 3.75);
  CHECK(planted_cell_mean(d, "m3_skew", "CG", "unstressed", "m", "a") == 3.75);
  CHECK(planted_cell_mean(d, "m3_skew", "AG", "stressed", "m", "i") == 3.5);
  CHECK(planted_cell_mean(d, "m3_skew", "AG", "stressed", "l", "a") == 2.0);
  CHECK(planted_cell_mean(d, "no_such_dv", "AG", "stressed", "l", "a") == 0.0);
}

TEST_CASE("synth_corpus: cell enumeration order and speaker assignment") {
  CorpusDesign d;
  d.n_per_cell = 2;
  d.speakers_per_variety = 2;
  const SynthCorpus c = synth_corpus(d);
  REQUIRE(c.records.size() == 64);

  CHECK(c.records[0].variety == Variety::AG);
  CHECK(c.records[0].stress == Stress::stressed);
  CHECK(c.records[0].segment == "l");
  CHECK(c.records[0].vowel == "a");
  CHECK(c.records[0].speaker == "AG01");
  CHECK(c.records[1].speaker == "AG02");
  CHECK(c.records[2].vowel == "i");
  CHECK(c.records[4].segment == "m");
  CHECK(c.records[16].stress == Stress::unstressed);
  CHECK(c.records[32].variety == Variety::CG);
  CHECK(c.records[32].speaker == "CG01");
}

TEST_CASE("synth_corpus: identical seeds give byte-identical corpora") {
  CorpusDesign d = CorpusDesign::realistic();
  d.n_per_cell = 2;
  d.speakers_per_variety = 2;
  d.seed = 9;
  d.speaker_sd["m1_cog_hz"] = 0.05;

  const std::string a = write_records_csv(synth_corpus(d).records);
  const std::string b = write_records_csv(synth_corpus(d).records);
  CHECK(a == b);

  d.seed = 10;
  CHECK(write_records_csv(synth_corpus(d).records) != a);
}

TEST_CASE("synth_corpus: noise averages out over many draws") {
  CorpusDesign d;
  d.n_per_cell = 313;  // 32 cells -> 10016 records
  d.seed = 7;
  d.effects["m4_kurt"] = {{"(Intercept)", 10.0}};
  d.noise_sd["m4_kurt"] = 2.0;

  const SynthCorpus c = synth_corpus(d);
  REQUIRE(c.records.size() == 10016);

  std::vector<double> xs;
  xs.reserve(c.records.size());
  for (const auto& r : c.records) xs.push_back(r.m4_kurt);
  const double n = static_cast<double>(xs.size());
  CHECK(std::fabs(oracles::mean_of(xs) - 10.0) < 3.0 * 2.0 / std::sqrt(n));
  CHECK(oracles::sample_sd(xs) == doctest::Approx(2.0).epsilon(0.05));

  // DVs with no planted effects stay at their reference value.
  CHECK(c.records[0].m1_cog_hz == 1.0);  // exp(0), logged scale
  CHECK(c.records[0].contour[0][0] == 0.0);
}

TEST_CASE("synth_corpus: speaker offsets are constant within speaker") {
  CorpusDesign d;
  d.n_per_cell = 2;
  d.speakers_per_variety = 2;
  d.seed = 3;
  d.effects["m3_skew"] = {{"(Intercept)", 0.0}};
  d.speaker_sd["m3_skew"] = 1.0;

  const SynthCorpus c = synth_corpus(d);
  std::map<std::string, std::set<double>> per_speaker;
  for (const auto& r : c.records) per_speaker[r.speaker].insert(r.m3_skew);

  REQUIRE(per_speaker.size() == 4);
  std::set<double> offsets;
  for (const auto& [speaker, values] : per_speaker) {
    CHECK(values.size() == 1);
    offsets.insert(*values.begin());
  }
  CHECK(offsets.size() == 4);
}

TEST_CASE("serialize_truth lists seed, noise, and effects") {
  CorpusDesign d;
  d.n_per_cell = 2;
  d.speakers_per_variety = 2;
  d.seed = 5;
  d.effects["m3_skew"] = {{"(Intercept)", 2.0}, {"m", 1.5}};
  d.noise_sd["m3_skew"] = 0.5;
  d.speaker_sd["f1_a0"] = 4.0;

  const std::string t = serialize_truth(synth_corpus(d));
  CHECK(t.rfind("sonolab corpus-truth v1\n", 0) == 0);
  CHECK(t.find("rng mt19937_64\n") != std::string::npos);
  CHECK(t.find("seed 5\n") != std::string::npos);
  CHECK(t.find("n_per_cell 2\n") != std::string::npos);
  CHECK(t.find("speakers_per_variety 2\n") != std::string::npos);
  CHECK(t.find("noise m3_skew 0.5\n") != std::string::npos);
  CHECK(t.find("speaker_sd f1_a0 4\n") != std::string::npos);
  CHECK(t.find("effect m3_skew (Intercept) 2\n") != std::string::npos);
  CHECK(t.find("effect m3_skew m 1.5\n") != std::string::npos);
}

TEST_CASE("demo_corpus: deterministic for a fixed seed") {
  const auto a = demo_corpus(4, 11);
  const auto b = demo_corpus(4, 11);
  REQUIRE(a.size() == 4);
  REQUIRE(b.size() == 4);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].speaker == b[i].speaker);
    CHECK(a[i].keyword == b[i].keyword);
    CHECK(same_samples(a[i].clip.samples, b[i].clip.samples));
  }
}

TEST_CASE("demo_corpus: token layout follows the annotation plan") {
  const auto toks = demo_corpus(20, 11);
  REQUIRE(toks.size() == 20);

  const DemoToken& t0 = toks[0];
  CHECK(t0.variety == Variety::AG);
  CHECK(t0.stress == Stress::stressed);
  CHECK(t0.segment_label == "l");
  CHECK(t0.vowel_label == "a");
  CHECK(t0.speaker == "AG03");
  CHECK(t0.keyword == "ta'la");
  CHECK(t0.vowel_spec.f0 == 197.0);
  CHECK(t0.clip.sample_rate == 44100);
  CHECK(t0.clip.samples.size() == 18522);  // 0.06 + 0.12 + 0.18 + 0.06 s

  REQUIRE(t0.phones.size() == 4);
  CHECK(t0.phones[0].label == "");
  CHECK(t0.phones[1].label == "l");
  CHECK(t0.phones[1].start_s == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(t0.phones[1].end_s == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(t0.phones[2].label == "a");
  CHECK(t0.phones[2].end_s == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(t0.phones[3].end_s == doctest::Approx(0.42).epsilon(1e-12));

  REQUIRE(t0.words.size() == 3);
  CHECK(t0.words[1].label == "ta'la");
  CHECK(t0.words[1].start_s == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(t0.words[1].end_s == doctest::Approx(0.37).epsilon(1e-12));

  // Leading silence is digital zero; the vowel span is not.
  for (size_t i = 0; i < 2646; ++i) REQUIRE(t0.clip.samples[i] == 0.0);
  double vowel_peak = 0.0, overall = 0.0;
  for (size_t i = 8000; i < 15800; ++i)
    vowel_peak = std::max(vowel_peak, std::fabs(t0.clip.samples[i]));
  for (double v : t0.clip.samples) overall = std::max(overall, std::fabs(v));
  CHECK(vowel_peak > 0.1);
  CHECK(overall <= 0.9 + 1e-12);

  // Factor wheels: variety flips fastest, then segment, vowel, stress.
  CHECK(toks[1].variety == Variety::CG);
  CHECK(toks[1].speaker == "CG01");
  CHECK(toks[2].segment_label == "m");
  CHECK(toks[2].sonorant_spec.formants[0].frequency_hz == 270.0);
  CHECK(toks[8].vowel_label == "i");
  CHECK(toks[16].stress == Stress::unstressed);
  CHECK(toks[16].keyword == "tala");

  // Planted F1 slope cycles -3, 0, +3 with the token index.
  CHECK(toks[0].vowel_spec.trajectory[0].a1 == -3.0);
  CHECK(toks[1].vowel_spec.trajectory[0].a1 == 0.0);
  CHECK(toks[2].vowel_spec.trajectory[0].a1 == 3.0);
}

TEST_CASE("serialize_demo_truth strips the stress mark from the keyword") {
  const auto toks = demo_corpus(17, 11);

  const std::string t = serialize_demo_truth(toks[0]);
  CHECK(t.rfind("sonolab demo-truth v1\n", 0) == 0);
  CHECK(t.find("speaker AG03\n") != std::string::npos);
  CHECK(t.find("variety AG\n") != std::string::npos);
  CHECK(t.find("stress stressed\n") != std::string::npos);
  CHECK(t.find("keyword tala\n") != std::string::npos);  // apostrophe dropped
  CHECK(t.find("segment l\n") != std::string::npos);
  CHECK(t.find("vowel a\n") != std::string::npos);
  CHECK(t.find("f0 197\n") != std::string::npos);
  CHECK(t.find("son_resonances 320/80 1450/160 2600/220 3300/280\n") !=
        std::string::npos);
  CHECK(t.find("vowel_f1 850 -3 0\n") != std::string::npos);

  const std::string u = serialize_demo_truth(toks[16]);
  CHECK(u.find("stress unstressed\n") != std::string::npos);
  CHECK(u.find("keyword tala\n") != std::string::npos);
}
