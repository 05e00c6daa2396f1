// synthkit.cpp
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
#include <cstdio>
#include <random>

#include "sonolab/errors.hpp"

namespace sonolab {
namespace {

// Portable standard normal: Box-Muller over mt19937_64 output. Avoids
// std::normal_distribution, whose sample sequence is not pinned by the
// standard.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    const double u1 = ((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = (gen_() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 gen_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string> kVarieties = {"AG", "CG"};
const std::vector<std::string> kStresses = {"stressed", "unstressed"};
const std::vector<std::string> kSegments = {"l", "m", "n", "r"};
const std::vector<std::string> kVowels = {"a", "i"};

bool term_matches(const std::string& term, const std::string& variety,
                  const std::string& stress, const std::string& segment,
                  const std::string& vowel) {
  size_t pos = 0;
  while (pos <= term.size()) {
    const size_t colon = term.find(':', pos);
    const std::string part =
        term.substr(pos, colon == std::string::npos ? colon : colon - pos);
    if (part != variety && part != stress && part != segment && part != vowel)
      return false;
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  return true;
}

}  // namespace

AudioClip synth_vowel(const VowelSpec& spec) {
  if (!(spec.f0 > 0.0) || !(spec.duration_s > 0.0) || spec.sample_rate <= 0)
    throw Error(Errc::non_finite_input, "invalid vowel spec");
  const double rate = spec.sample_rate;
  const size_t nf = spec.formants.size();
  if (!spec.trajectory.empty() && spec.trajectory.size() != nf)
    throw Error(Errc::non_finite_input,
                "trajectory count does not match formant count");
  for (size_t i = 0; i < nf; ++i) {
    const auto& f = spec.formants[i];
    if (!(f.frequency_hz > 0.0) || f.frequency_hz >= rate / 2.0)
      throw Error(Errc::out_of_band, "formant outside (0, Nyquist)");
    if (i > 0 && f.frequency_hz <= spec.formants[i - 1].frequency_hz)
      throw Error(Errc::non_finite_input, "formants must ascend");
    if (!(f.bandwidth_hz > 0.0))
      throw Error(Errc::unstable_resonator,
                  "bandwidth must be positive for a stable pole");
  }

  const long n =
      static_cast<long>(std::lround(spec.duration_s * rate));
  std::vector<double> y(static_cast<size_t>(n), 0.0);

  std::vector<double> r(nf), cth(nf);
  for (size_t i = 0; i < nf; ++i) {
    r[i] = std::exp(-M_PI * spec.formants[i].bandwidth_hz / rate);
    cth[i] = std::cos(2.0 * M_PI * spec.formants[i].frequency_hz / rate);
    if (r[i] >= 1.0)
      throw Error(Errc::unstable_resonator, "pole radius >= 1");
  }

  std::vector<double> y1(nf, 0.0), y2(nf, 0.0);
  double phase = 1.0;
  const double inc = spec.f0 / rate;
  for (long s = 0; s < n; ++s) {
    phase += inc;
    double v = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      v = 1.0;
    }
    if (!spec.trajectory.empty()) {
      // Grid-step time: t = 0 at the 5% point, 19 at the 95% point.
      const double pos = n > 1 ? static_cast<double>(s) / (n - 1) : 0.0;
      const double t = 20.0 * pos - 1.0;
      for (size_t i = 0; i < nf; ++i) {
        const auto& tr = spec.trajectory[i];
        const double f = tr.a0 + (tr.a1 + tr.a2 * t) * t;
        if (!(f > 0.0) || f >= rate / 2.0)
          throw Error(Errc::out_of_band, "trajectory leaves (0, Nyquist)");
        cth[i] = std::cos(2.0 * M_PI * f / rate);
      }
    }
    for (size_t i = 0; i < nf; ++i) {
      const double out = 2.0 * r[i] * cth[i] * y1[i] - r[i] * r[i] * y2[i] + v;
      y2[i] = y1[i];
      y1[i] = out;
      v = out;
    }
    y[static_cast<size_t>(s)] = v;
  }

  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::fabs(v));
  if (peak > 0.0)
    for (double& v : y) v *= 0.9 / peak;

  AudioClip clip;
  clip.samples = std::move(y);
  clip.sample_rate = spec.sample_rate;
  return clip;
}

AveragedSpectrum synth_spectrum(const EnvelopeSpec& spec) {
  if (spec.n_bins < 2 || !(spec.nyquist_hz > 0.0))
    throw Error(Errc::non_finite_input, "invalid envelope spec");
  const double bin_hz = spec.nyquist_hz / (spec.n_bins - 1);

  AveragedSpectrum out;
  out.bin_hz = bin_hz;
  out.n_frames_averaged = 1;
  out.power.assign(static_cast<size_t>(spec.n_bins), 0.0);

  switch (spec.kind) {
    case EnvelopeSpec::Kind::flat: {
      if (spec.f_lo < 0.0 || spec.f_hi > spec.nyquist_hz ||
          spec.f_lo > spec.f_hi)
        throw Error(Errc::out_of_band, "flat band outside [0, Nyquist]");
      const int k0 =
          static_cast<int>(std::ceil(spec.f_lo / bin_hz - 1e-9));
      const int k1 =
          static_cast<int>(std::floor(spec.f_hi / bin_hz + 1e-9));
      for (int k = std::max(0, k0); k <= std::min(spec.n_bins - 1, k1); ++k)
        out.power[static_cast<size_t>(k)] = 1.0;
      break;
    }
    case EnvelopeSpec::Kind::gaussian: {
      if (spec.mu < 0.0 || spec.mu > spec.nyquist_hz || !(spec.sigma > 0.0))
        throw Error(Errc::out_of_band, "gaussian center outside [0, Nyquist]");
      for (int k = 0; k < spec.n_bins; ++k) {
        const double d = k * bin_hz - spec.mu;
        out.power[static_cast<size_t>(k)] =
            std::exp(-0.5 * d * d / (spec.sigma * spec.sigma));
      }
      break;
    }
    case EnvelopeSpec::Kind::point: {
      if (spec.f < 0.0 || spec.f > spec.nyquist_hz)
        throw Error(Errc::out_of_band, "point outside [0, Nyquist]");
      const long k = std::lround(spec.f / bin_hz);
      out.power[static_cast<size_t>(std::clamp(
          k, 0L, static_cast<long>(spec.n_bins - 1)))] = 1.0;
      break;
    }
  }
  return out;
}

CorpusDesign CorpusDesign::realistic() {
  CorpusDesign d;
  d.effects["duration_ms"] = {{"(Intercept)", 4.38},
                              {"r", -1.11},
                              {"CG:m", 0.09},
                              {"CG:r", 0.09},
                              {"CG:unstressed", -0.10}};
  d.effects["m1_cog_hz"] = {{"(Intercept)", 6.63},
                            {"n", -0.12},
                            {"r", 0.41},
                            {"CG:m", 0.06},
                            {"CG:n", 0.08}};
  d.effects["m2_sd_hz"] = {{"(Intercept)", 6.56}, {"m", -0.14}, {"n", -0.11},
                           {"r", 0.46},           {"CG:m", 0.25}, {"CG:n", 0.23}};
  d.effects["m3_skew"] = {{"(Intercept)", 11.42},
                          {"m", 3.57},
                          {"n", 4.14},
                          {"r", -3.01},
                          {"CG:m", -2.67}};
  d.effects["m4_kurt"] = {{"(Intercept)", 288.10},
                          {"m", 227.90},
                          {"n", 218.80},
                          {"r", -154.20}};
  d.effects["f1_a0"] = {{"(Intercept)", 479.63}, {"i", -60.0}, {"CG:n", -90.75}};
  d.effects["f1_a1"] = {{"(Intercept)", -10.28}, {"i", 8.99}};
  d.effects["f1_a2"] = {{"(Intercept)", 0.59}};
  d.effects["f2_a0"] = {{"(Intercept)", 1564.21}, {"i", 300.0}, {"n:i", -144.90}};
  d.effects["f2_a1"] = {{"(Intercept)", -0.09}, {"CG:r:i", 34.24}};
  d.effects["f2_a2"] = {{"(Intercept)", -0.07}};
  d.effects["f3_a0"] = {{"(Intercept)", 2844.90}};
  d.effects["f3_a1"] = {{"(Intercept)", 7.79}, {"CG:n:i", 28.82}};
  d.effects["f3_a2"] = {{"(Intercept)", -0.46}, {"r", -0.66}};
  d.effects["f4_a0"] = {{"(Intercept)", 3814.76}};
  d.effects["f4_a1"] = {{"(Intercept)", -9.55}, {"n", 23.71}};
  d.effects["f4_a2"] = {{"(Intercept)", 0.38}, {"n", -1.39}};
  for (int fi = 1; fi <= 4; ++fi)
    d.effects["f" + std::to_string(fi) + "_rmse"] = {{"(Intercept)", 5.0}};

  d.noise_sd = {{"duration_ms", 0.30}, {"m1_cog_hz", 0.25}, {"m2_sd_hz", 0.30},
                {"m3_skew", 6.0},      {"m4_kurt", 400.0},  {"f1_a0", 17.0},
                {"f1_a1", 2.0},        {"f1_a2", 0.10},     {"f2_a0", 33.0},
                {"f2_a1", 4.4},        {"f2_a2", 0.23},     {"f3_a0", 43.0},
                {"f3_a1", 4.2},        {"f3_a2", 0.23},     {"f4_a0", 80.0},
                {"f4_a1", 6.8},        {"f4_a2", 0.37}};
  return d;
}

double planted_cell_mean(const CorpusDesign& design, const std::string& dv,
                         const std::string& variety, const std::string& stress,
                         const std::string& segment, const std::string& vowel) {
  double mean = 0.0;
  const auto it = design.effects.find(dv);
  if (it == design.effects.end()) return mean;
  for (const auto& [term, value] : it->second) {
    if (term == "(Intercept)" ||
        term_matches(term, variety, stress, segment, vowel))
      mean += value;
  }
  return mean;
}

SynthCorpus synth_corpus(const CorpusDesign& design) {
  SynthCorpus out;
  out.design = design;
  NormalSampler normal(design.seed);
  const auto& columns = record_numeric_columns();

  // Speaker offsets first, in a fixed draw order.
  std::map<std::pair<std::string, std::string>, std::map<std::string, double>>
      speaker_offset;  // (variety, speaker) -> dv -> offset
  for (const std::string& variety : kVarieties)
    for (int s = 0; s < design.speakers_per_variety; ++s) {
      char id[16];
      std::snprintf(id, sizeof id, "%s%02d", variety.c_str(), s + 1);
      auto& per_dv = speaker_offset[{variety, id}];
      for (const std::string& dv : columns) {
        const auto it = design.speaker_sd.find(dv);
        const double sd = it == design.speaker_sd.end() ? 0.0 : it->second;
        per_dv[dv] = sd > 0.0 ? sd * normal() : 0.0;
      }
    }

  for (const std::string& variety : kVarieties)
    for (const std::string& stress : kStresses)
      for (const std::string& segment : kSegments)
        for (const std::string& vowel : kVowels)
          for (int rep = 0; rep < design.n_per_cell; ++rep) {
            char id[16];
            std::snprintf(id, sizeof id, "%s%02d", variety.c_str(),
                          rep % design.speakers_per_variety + 1);
            FeatureRecord r;
            r.speaker = id;
            r.keyword = segment + vowel;
            r.variety = variety_from_string(variety);
            r.stress = stress_from_string(stress);
            r.segment = segment;
            r.vowel = vowel;
            r.n_frames_averaged = 5;

            const auto& sp = speaker_offset[{variety, id}];
            for (const std::string& dv : columns) {
              double v = planted_cell_mean(design, dv, variety, stress,
                                           segment, vowel);
              v += sp.at(dv);
              const auto nit = design.noise_sd.find(dv);
              if (nit != design.noise_sd.end() && nit->second > 0.0)
                v += nit->second * normal();
              if (design.log_policy.is_logged(dv)) v = std::exp(v);
              if (dv == "duration_ms") r.duration_ms = v;
              else if (dv == "m1_cog_hz") r.m1_cog_hz = v;
              else if (dv == "m2_sd_hz") r.m2_sd_hz = v;
              else if (dv == "m3_skew") r.m3_skew = v;
              else if (dv == "m4_kurt") r.m4_kurt = v;
              else if (dv.size() == 5 && dv[3] == 'a')
                r.contour[static_cast<size_t>(dv[1] - '1')]
                         [static_cast<size_t>(dv[4] - '0')] = v;
              else
                r.rmse[static_cast<size_t>(dv[1] - '1')] = std::max(0.0, v);
            }
            out.records.push_back(std::move(r));
          }
  return out;
}

std::string serialize_truth(const SynthCorpus& corpus) {
  std::string out = "sonolab corpus-truth v1\n";
  out += "rng " + corpus.rng + "\n";
  out += "seed " + std::to_string(corpus.design.seed) + "\n";
  out += "n_per_cell " + std::to_string(corpus.design.n_per_cell) + "\n";
  out += "speakers_per_variety " +
         std::to_string(corpus.design.speakers_per_variety) + "\n";
  for (const auto& [dv, sd] : corpus.design.noise_sd)
    out += "noise " + dv + " " + fmt(sd) + "\n";
  for (const auto& [dv, sd] : corpus.design.speaker_sd)
    out += "speaker_sd " + dv + " " + fmt(sd) + "\n";
  for (const auto& [dv, terms] : corpus.design.effects)
    for (const auto& [term, value] : terms)
      out += "effect " + dv + " " + term + " " + fmt(value) + "\n";
  return out;
}

std::vector<DemoToken> demo_corpus(int n_tokens, std::uint64_t seed) {
  std::vector<DemoToken> out;
  out.reserve(static_cast<size_t>(std::max(0, n_tokens)));
  for (int i = 0; i < n_tokens; ++i) {
    DemoToken tok;
    const std::string variety = kVarieties[static_cast<size_t>(i % 2)];
    tok.variety = variety_from_string(variety);
    tok.segment_label = kSegments[static_cast<size_t>((i / 2) % 4)];
    tok.vowel_label = kVowels[static_cast<size_t>((i / 8) % 2)];
    tok.stress = (i / 16) % 2 ? Stress::unstressed : Stress::stressed;
    char id[16];
    std::snprintf(id, sizeof id, "%s%02d",
                  variety.c_str(), static_cast<int>((i + seed) % 3 + 1));
    tok.speaker = id;
    tok.keyword = "ta" +
                  std::string(tok.stress == Stress::stressed ? "'" : "") +
                  tok.segment_label + tok.vowel_label;

    const double f0 = 190.0 + 7.0 * static_cast<double>((i + static_cast<int>(seed % 5)) % 5);

    tok.sonorant_spec.f0 = f0;
    tok.sonorant_spec.duration_s = 0.12;
    const double son_f1 = tok.segment_label == "l"   ? 320.0
                          : tok.segment_label == "m" ? 270.0
                          : tok.segment_label == "n" ? 300.0
                                                     : 350.0;
    tok.sonorant_spec.formants = {
        {son_f1, 80.0}, {1450.0, 160.0}, {2600.0, 220.0}, {3300.0, 280.0}};

    tok.vowel_spec.f0 = f0;
    tok.vowel_spec.duration_s = 0.18;
    if (tok.vowel_label == "a")
      tok.vowel_spec.formants = {
          {850.0, 80.0}, {1220.0, 90.0}, {2810.0, 120.0}, {3800.0, 160.0}};
    else
      tok.vowel_spec.formants = {
          {300.0, 60.0}, {2300.0, 100.0}, {3010.0, 130.0}, {3900.0, 170.0}};
    // Mild known F1 slope so the contour stage has signal to recover.
    const double a1 = 3.0 * static_cast<double>(i % 3 - 1);
    tok.vowel_spec.trajectory = {
        {tok.vowel_spec.formants[0].frequency_hz, a1, 0.0},
        {tok.vowel_spec.formants[1].frequency_hz, 0.0, 0.0},
        {tok.vowel_spec.formants[2].frequency_hz, 0.0, 0.0},
        {tok.vowel_spec.formants[3].frequency_hz, 0.0, 0.0}};

    const int rate = 44100;
    const double t_sil = 0.06;
    const AudioClip son = synth_vowel(tok.sonorant_spec);
    const AudioClip vow = synth_vowel(tok.vowel_spec);
    const double t_son = t_sil;
    const double t_vow = t_son + tok.sonorant_spec.duration_s;
    const double t_end = t_vow + tok.vowel_spec.duration_s + t_sil;

    tok.clip.sample_rate = rate;
    tok.clip.samples.assign(
        static_cast<size_t>(std::lround(t_end * rate)), 0.0);
    const size_t o1 = static_cast<size_t>(std::lround(t_son * rate));
    for (size_t s = 0; s < son.samples.size(); ++s)
      tok.clip.samples[o1 + s] = son.samples[s];
    const size_t o2 = static_cast<size_t>(std::lround(t_vow * rate));
    for (size_t s = 0; s < vow.samples.size(); ++s)
      tok.clip.samples[o2 + s] = vow.samples[s];

    const double son_end = t_vow;
    const double vow_end = t_vow + tok.vowel_spec.duration_s;
    tok.phones = {
        {"", 0.0, t_son, "phones"},
        {tok.segment_label, t_son, son_end, "phones"},
        {tok.vowel_label, t_vow, vow_end, "phones"},
        {"", vow_end, t_end, "phones"},
    };
    tok.words = {
        {"", 0.0, 0.05, "words"},
        {tok.keyword, 0.05, vow_end + 0.01, "words"},
        {"", vow_end + 0.01, t_end, "words"},
    };
    out.push_back(std::move(tok));
  }
  return out;
}

std::string serialize_demo_truth(const DemoToken& token) {
  std::string out = "sonolab demo-truth v1\n";
  out += "speaker " + token.speaker + "\n";
  out += std::string("variety ") + to_string(token.variety) + "\n";
  out += std::string("stress ") + to_string(token.stress) + "\n";
  // The stress mark is annotation syntax, not part of the keyword itself.
  std::string plain;
  for (char c : token.keyword)
    if (c != '\'') plain += c;
  out += "keyword " + plain + "\n";
  out += "segment " + token.segment_label + "\n";
  out += "vowel " + token.vowel_label + "\n";
  out += "f0 " + fmt(token.vowel_spec.f0) + "\n";
  out += "son_resonances";
  for (const auto& f : token.sonorant_spec.formants)
    out += " " + fmt(f.frequency_hz) + "/" + fmt(f.bandwidth_hz);
  out += "\n";
  for (size_t i = 0; i < token.vowel_spec.trajectory.size(); ++i) {
    const auto& tr = token.vowel_spec.trajectory[i];
    out += "vowel_f" + std::to_string(i + 1) + " " + fmt(tr.a0) + " " +
           fmt(tr.a1) + " " + fmt(tr.a2) + "\n";
  }
  return out;
}

}  // namespace sonolab
