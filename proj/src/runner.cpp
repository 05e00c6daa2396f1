// runner.cpp
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

#include "sonolab/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sonolab/contour.hpp"
#include "sonolab/errors.hpp"
#include "sonolab/formants.hpp"
#include "sonolab/spectrum.hpp"
#include "sonolab/stats.hpp"
#include "sonolab/synthkit.hpp"
#include "sonolab/textgrid.hpp"

namespace sonolab {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kMomentDvs = {
    "duration_ms", "m1_cog_hz", "m2_sd_hz", "m3_skew", "m4_kurt"};

std::vector<std::string> contour_dvs() {
  std::vector<std::string> dvs;
  for (int fi = 1; fi <= 4; ++fi)
    for (int c = 0; c < 3; ++c)
      dvs.push_back("f" + std::to_string(fi) + "_a" + std::to_string(c));
  return dvs;
}

bool ends_with_nocase(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  for (size_t i = 0; i < suffix.size(); ++i) {
    const char a = s[s.size() - suffix.size() + i];
    const char b = suffix[i];
    if (std::tolower(static_cast<unsigned char>(a)) !=
        std::tolower(static_cast<unsigned char>(b)))
      return false;
  }
  return true;
}

// TextGrid or TSV, by extension; returns (phones, words).
std::pair<std::vector<Segment>, std::vector<Segment>> load_annotations(
    const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<Segment> phones, words;
  if (ends_with_nocase(path, ".textgrid")) {
    const std::vector<Tier> tiers = parse_textgrid(text);
    const Tier* phone_tier = nullptr;
    const Tier* word_tier = nullptr;
    for (const Tier& t : tiers) {
      std::string low;
      for (char c : t.name)
        low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (!phone_tier && low.find("phone") != std::string::npos)
        phone_tier = &t;
      if (!word_tier && low.find("word") != std::string::npos) word_tier = &t;
    }
    if (!phone_tier && !tiers.empty()) phone_tier = &tiers.front();
    if (phone_tier) phones = phone_tier->segments;
    if (word_tier) words = word_tier->segments;
  } else {
    for (Segment& s : parse_tsv_annotations(text)) {
      if (s.tier == "words")
        words.push_back(std::move(s));
      else
        phones.push_back(std::move(s));
    }
  }
  return {std::move(phones), std::move(words)};
}

LogPolicy log_policy_of(const Config& cfg) {
  LogPolicy p;
  p.log_skew_kurt = cfg.stats.log_skew_kurt;
  return p;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::malformed_container, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Errc::malformed_container, "cannot write '" + path + "'");
  out << text;
}

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::string& base_dir) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
    return (fs::path(base_dir) / p).string();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    size_t pos = 0;
    while (true) {
      const size_t tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (f.size() < 4 || f.size() > 5)
      throw Error(Errc::schema_error,
                  "manifest line " + std::to_string(lineno) +
                      ": expected wav<TAB>annotation<TAB>speaker<TAB>variety");
    ManifestEntry e;
    e.wav_path = resolve(f[0]);
    e.annotation_path = resolve(f[1]);
    e.speaker = f[2];
    try {
      e.variety = variety_from_string(f[3]);
    } catch (const Error& err) {
      throw Error(Errc::schema_error, "manifest line " +
                                          std::to_string(lineno) + ": " +
                                          err.what());
    }
    if (f.size() == 5) e.notes = f[4];
    out.push_back(std::move(e));
  }
  return out;
}

AnalyzeOutcome run_analyze(const std::vector<ManifestEntry>& manifest,
                           const Config& cfg, Exec exec) {
  AnalyzeOutcome out;
  std::vector<FeatureRecord> records;
  std::string report = "sonolab analyze report\n";
  report += "entries " + std::to_string(manifest.size()) + "\n";

  for (size_t ei = 0; ei < manifest.size(); ++ei) {
    const ManifestEntry& entry = manifest[ei];
    const std::string tag = "entry " + std::to_string(ei) + " " + entry.wav_path;
    try {
      const AudioClip clip = read_wav(entry.wav_path);
      const auto [phones, words] = load_annotations(entry.annotation_path);
      TokenMetadata meta;
      meta.speaker = entry.speaker;
      meta.variety = entry.variety;
      const PairResult paired = pair_tokens(phones, meta, words);

      int entry_rows = 0;
      for (const TokenPair& tok : paired.pairs) {
        char where[64];
        std::snprintf(where, sizeof where, " token [%s] %.3f-%.3fs: ",
                      tok.sonorant.label.c_str(), tok.sonorant.start_s,
                      tok.sonorant.end_s);
        try {
          FeatureRecord r;
          r.speaker = tok.speaker;
          r.keyword = tok.keyword;
          r.variety = tok.variety;
          r.stress = tok.stress;
          r.segment = tok.sonorant.label;
          r.vowel = tok.vowel.label;
          r.duration_ms = duration_ms(tok.sonorant);

          const AveragedSpectrum spec =
              averaged_spectrum(clip, tok.sonorant, cfg.spectrum, exec);
          MomentOptions mopt;
          mopt.exclude_dc = cfg.spectrum.exclude_dc;
          const SpectralMoments m = spectral_moments(spec, mopt);
          r.m1_cog_hz = m.m1_cog;
          r.m2_sd_hz = m.m2_sd;
          r.m3_skew = m.m3_skewness;
          r.m4_kurt = m.m4_kurtosis;
          r.n_frames_averaged = spec.n_frames_averaged;

          const FormantTrack ft = track(clip, tok.vowel, cfg.formants, exec);
          for (int fi = 0; fi < 4; ++fi) {
            std::array<double, 19> contour;
            for (int k = 0; k < 19; ++k)
              contour[static_cast<size_t>(k)] =
                  ft.values[static_cast<size_t>(k)][static_cast<size_t>(fi)];
            PolyCoeffs pc = fit_quadratic(contour);
            pc.formant_index = fi + 1;
            r.contour[static_cast<size_t>(fi)] = {pc.a0, pc.a1, pc.a2};
            r.rmse[static_cast<size_t>(fi)] = pc.rmse;
          }
          records.push_back(std::move(r));
          ++entry_rows;
        } catch (const Error& e) {
          ++out.skipped_tokens;
          report += tag + where + std::string("skipped: ") + e.what() + "\n";
        }
      }
      for (const TokenSkip& skip : paired.skips) {
        ++out.skipped_tokens;
        char where[64];
        std::snprintf(where, sizeof where, " token [%s] %.3f-%.3fs: ",
                      skip.segment.label.c_str(), skip.segment.start_s,
                      skip.segment.end_s);
        report += tag + where + "skipped: " + skip.reason + "\n";
      }
      report += tag + ": analyzed rows=" + std::to_string(entry_rows) + "\n";
    } catch (const Error& e) {
      ++out.failed_entries;
      report += tag + ": failed: " + e.what() + "\n";
    }
  }

  out.rows = static_cast<int>(records.size());
  report += "rows " + std::to_string(out.rows) + "\n";
  report += "skipped " + std::to_string(out.skipped_tokens) + "\n";
  report += "failed " + std::to_string(out.failed_entries) + "\n";
  out.csv_text = write_records_csv(records);
  out.report_text = std::move(report);
  return out;
}

std::string run_summarize(const std::vector<FeatureRecord>& records,
                          const Config& cfg) {
  (void)cfg;
  std::string out = "dv,variety,segment,stress,vowel,n,mean,sd\n";
  auto emit = [&](const std::string& dv,
                  const std::vector<std::string>& factors, bool with_vowel) {
    for (const CellSummary& c : summarize(records, dv, factors)) {
      out += dv;
      for (const std::string& k : c.key) out += "," + k;
      if (!with_vowel) out += ",";
      out += "," + std::to_string(c.n);
      out += "," + format_number(c.mean);
      out += ",";
      if (c.sd) out += format_number(*c.sd);
      out += "\n";
    }
  };
  for (const std::string& dv : kMomentDvs)
    emit(dv, {"variety", "segment", "stress"}, false);
  for (const std::string& dv : contour_dvs())
    emit(dv, {"variety", "segment", "stress", "vowel"}, true);
  return out;
}

double student_t_quantile(double alpha, double df) {
  // Bisection on the two-sided tail; plenty for table output.
  double lo = 0.0, hi = 1e3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * student_t_sf(mid, df) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string run_plot_data(const std::vector<FeatureRecord>& records,
                          const Config& cfg) {
  (void)cfg;
  std::string out = "dv,variety,segment,stress,vowel,n,mean,ci_lo,ci_hi\n";
  auto emit = [&](const std::string& dv,
                  const std::vector<std::string>& factors, bool with_vowel) {
    for (const CellSummary& c : summarize(records, dv, factors)) {
      out += dv;
      for (const std::string& k : c.key) out += "," + k;
      if (!with_vowel) out += ",";
      out += "," + std::to_string(c.n) + "," + format_number(c.mean) + ",";
      if (c.sd && c.n >= 2) {
        const double half =
            student_t_quantile(0.05, c.n - 1) * *c.sd / std::sqrt(c.n);
        out += format_number(c.mean - half) + "," +
               format_number(c.mean + half);
      } else {
        out += ",";
      }
      out += "\n";
    }
  };
  for (const std::string& dv : kMomentDvs)
    emit(dv, {"variety", "segment", "stress"}, false);
  for (const std::string& dv : contour_dvs())
    emit(dv, {"variety", "segment", "stress", "vowel"}, true);
  return out;
}

std::string run_model(const std::vector<FeatureRecord>& records,
                      const Config& cfg) {
  std::string out;
  out += "# fixed-effects OLS; speaker/keyword random effects are not "
         "estimated (df and p-values are residual-based)\n";
  out += "dv,term,Estimate,SE,df,t value,Pr(t)\n";
  FitOptions opt;
  opt.center_by_speaker = cfg.stats.center_speaker;
  opt.log_policy = log_policy_of(cfg);

  auto emit = [&](const std::string& dv,
                  const std::vector<std::string>& factors) {
    try {
      const ModelFit fit = fit_factorial(records, dv, factors, opt);
      for (const ModelTerm& t : fit.terms) {
        out += dv + "," + t.term + "," + format_number(t.estimate) + "," +
               format_number(t.se) + "," + format_number(fit.df) + "," +
               format_number(t.t) + "," + format_number(t.p) + "\n";
      }
    } catch (const Error& e) {
      out += "# " + dv + " skipped: " + e.what() + "\n";
    }
  };
  for (const std::string& dv : kMomentDvs)
    emit(dv, {"variety", "stress", "segment"});
  for (const std::string& dv : contour_dvs())
    emit(dv, {"variety", "stress", "segment", "vowel"});
  return out;
}

std::string run_contrasts(const std::vector<FeatureRecord>& records,
                          const Config& cfg) {
  std::string out = "dv,stress,family,contrast,n1,n2,estimate,df,t,p,p_holm\n";
  const LogPolicy policy = log_policy_of(cfg);
  for (const std::string& dv : kMomentDvs)
    for (const Stress stress : {Stress::stressed, Stress::unstressed}) {
      std::vector<ContrastRow> rows;
      try {
        rows = pairwise_contrasts(records, dv, stress, policy);
      } catch (const Error& e) {
        out += "# " + dv + " skipped: " + e.what() + "\n";
        continue;
      }
      for (const ContrastRow& r : rows) {
        out += dv + "," + to_string(stress) + "," + r.family + "," +
               r.contrast + "," + std::to_string(r.n1) + "," +
               std::to_string(r.n2) + ",";
        out += (r.estimate ? format_number(*r.estimate) : "") + ",";
        out += (r.df ? format_number(*r.df) : "") + ",";
        out += (r.t ? format_number(*r.t) : "") + ",";
        out += (r.p ? format_number(*r.p) : "") + ",";
        out += (r.p_holm ? format_number(*r.p_holm) : "");
        out += "\n";
      }
    }
  return out;
}

ClassifyOutcome run_classify(const std::vector<FeatureRecord>& records,
                             const Config& cfg) {
  ClassifyOutcome out;
  const CrossValidation cv =
      cross_validate(records, cfg.k_folds, cfg.seed, cfg.classify);
  std::string rep = "sonolab classify report\n";
  rep += "rng " + cv.rng + "\n";
  rep += "seed " + std::to_string(cv.seed) + "\n";
  rep += "k " + std::to_string(cv.k) + "\n";
  for (size_t f = 0; f < cv.fold_accuracy.size(); ++f)
    rep += "fold " + std::to_string(f) + " accuracy " +
           format_number(cv.fold_accuracy[f]) + "\n";
  rep += "mean_accuracy " + format_number(cv.mean_accuracy) + "\n";
  out.report_text = std::move(rep);
  out.model_text = serialize_classifier(train(records, cfg.classify));
  return out;
}

std::string run_synth(const std::string& out_dir, int n_tokens,
                      std::uint64_t seed) {
  fs::create_directories(out_dir);
  const std::vector<DemoToken> tokens = demo_corpus(n_tokens, seed);
  std::string manifest;
  manifest += "# wav\tannotation\tspeaker\tvariety\tnotes\n";
  for (size_t i = 0; i < tokens.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "demo_%03d", static_cast<int>(i));
    const DemoToken& tok = tokens[i];
    write_wav((fs::path(out_dir) / (std::string(stem) + ".wav")).string(),
              tok.clip);
    std::vector<Segment> all = tok.phones;
    all.insert(all.end(), tok.words.begin(), tok.words.end());
    write_text_file(
        (fs::path(out_dir) / (std::string(stem) + ".tsv")).string(),
        serialize_tsv_annotations(all));
    write_text_file(
        (fs::path(out_dir) / (std::string(stem) + ".truth")).string(),
        serialize_demo_truth(tok));
    manifest += std::string(stem) + ".wav\t" + stem + ".tsv\t" + tok.speaker +
                "\t" + to_string(tok.variety) + "\tsynthetic\n";
  }
  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.tsv").string();
  write_text_file(manifest_path, manifest);
  return manifest_path;
}

std::string run_validate(const std::string& csv_text) {
  const std::vector<FeatureRecord> records = read_records_csv(csv_text);
  return "OK " + std::to_string(records.size()) + " rows\n";
}

}  // namespace sonolab
