// sonolab/runner.hpp
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
// Subcommand implementations as plain functions over in-memory data, so the
// same code path serves the CLI and the test suite.

#ifndef SONOLAB_RUNNER_HPP
#define SONOLAB_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sonolab/config.hpp"
#include "sonolab/parallel.hpp"
#include "sonolab/records.hpp"

namespace sonolab {

struct ManifestEntry {
  std::string wav_path;
  std::string annotation_path;
  std::string speaker;
  Variety variety = Variety::AG;
  std::string notes;
};

/// Tab-separated manifest: wav, annotation, speaker, variety[, notes].
/// Relative paths resolve against base_dir.
std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::string& base_dir);

struct AnalyzeOutcome {
  std::string csv_text;
  std::string report_text;
  int rows = 0;
  int skipped_tokens = 0;
  int failed_entries = 0;

  int exit_code() const { return (rows > 0 && failed_entries == 0) ? 0 : 1; }
};

/// Full feature-extraction pass: every manifest entry is analyzed, skipped,
/// or failed, and the report names each outcome. Row order follows manifest
/// order, then segment start time.
AnalyzeOutcome run_analyze(const std::vector<ManifestEntry>& manifest,
                           const Config& cfg, Exec exec = Exec::parallel);

/// Per-cell mean/SD table over raw-scale DVs:
/// dv,variety,segment,stress,vowel,n,mean,sd (vowel blank for sonorant DVs).
std::string run_summarize(const std::vector<FeatureRecord>& records,
                          const Config& cfg);

/// Mean with 95% t-interval per cell, for external plotting.
std::string run_plot_data(const std::vector<FeatureRecord>& records,
                          const Config& cfg);

/// Factorial OLS tables for every DV:
/// dv,term,Estimate,SE,df,t value,Pr(t).
std::string run_model(const std::vector<FeatureRecord>& records,
                      const Config& cfg);

/// Welch/Holm pairwise contrasts per stress stratum:
/// dv,stress,family,contrast,n1,n2,estimate,df,t,p,p_holm.
std::string run_contrasts(const std::vector<FeatureRecord>& records,
                          const Config& cfg);

struct ClassifyOutcome {
  std::string report_text;  // fold accuracies + metadata
  std::string model_text;   // serialized model trained on all records
};

ClassifyOutcome run_classify(const std::vector<FeatureRecord>& records,
                             const Config& cfg);

/// Writes demo_NNN.wav / .tsv / .truth plus manifest.tsv under out_dir.
/// Returns the manifest path.
std::string run_synth(const std::string& out_dir, int n_tokens,
                      std::uint64_t seed);

/// Reads and schema-checks a features CSV; returns a one-line summary.
std::string run_validate(const std::string& csv_text);

/// Two-sided Student t critical value, P(|T| > q) = alpha.
double student_t_quantile(double alpha, double df);

std::string read_text_file(const std::string& path);   // Error on failure
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sonolab

#endif  // SONOLAB_RUNNER_HPP
