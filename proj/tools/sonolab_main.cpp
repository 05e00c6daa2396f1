// sonolab_main.cpp
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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sonolab/config.hpp"
#include "sonolab/errors.hpp"
#include "sonolab/runner.hpp"

namespace fs = std::filesystem;
using namespace sonolab;

namespace {

Config resolve_config(const std::string& config_path,
                      const std::vector<std::string>& sets) {
  Config cfg;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SONOLAB_CONFIG")) path = env;
  }
  if (!path.empty()) cfg = load_config_file(path);
  for (const std::string& kv : sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::config_error, "--set expects key=value, got '" + kv + "'");
    config_set(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

std::vector<FeatureRecord> load_features(const std::string& path) {
  return read_records_csv(read_text_file(path));
}

std::string out_path(const std::string& dir, const char* name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speech acoustics toolkit: sonorant spectra, vowel formant "
               "contours, and the statistics on top of them"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", features_path, manifest_path;
  std::vector<std::string> sets;
  bool serial = false, emit_plot = false;
  int n_tokens = 8;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;
  int k_flag = 0;

  app.add_option("--config", config_path,
                 "config file (fallback: SONOLAB_CONFIG env var)");
  app.add_option("--set", sets, "override a config key, e.g. --set seed=7")
      ->take_all();

  auto* analyze = app.add_subcommand(
      "analyze", "extract features from a manifest of wav+annotation pairs");
  analyze->add_option("manifest", manifest_path, "manifest.tsv path")
      ->required();
  analyze->add_option("--out", out_dir, "output directory");
  analyze->add_flag("--serial", serial, "disable the parallel kernels");

  auto* summarize =
      app.add_subcommand("summarize", "per-cell means and SDs of features.csv");
  summarize->add_option("features", features_path, "features.csv")->required();
  summarize->add_option("--out", out_dir, "output directory");
  summarize->add_flag("--emit-plot-data", emit_plot,
                      "also write mean +/- 95% CI per cell");

  auto* model =
      app.add_subcommand("model", "factorial OLS coefficient tables");
  model->add_option("features", features_path, "features.csv")->required();
  model->add_option("--out", out_dir, "output directory");

  auto* contrasts =
      app.add_subcommand("contrasts", "pairwise Welch/Holm contrasts");
  contrasts->add_option("features", features_path, "features.csv")->required();
  contrasts->add_option("--out", out_dir, "output directory");

  auto* classify =
      app.add_subcommand("classify", "cross-validated variety classifier");
  classify->add_option("features", features_path, "features.csv")->required();
  classify->add_option("--out", out_dir, "output directory");
  classify->add_option("--k", k_flag, "fold count");
  classify->add_option("--seed", seed_flag, "fold-assignment seed")
      ->each([&](const std::string&) { seed_given = true; });

  auto* synth = app.add_subcommand(
      "synth", "write a synthetic demo corpus with truth sidecars");
  synth->add_option("--out", out_dir, "output directory");
  synth->add_option("--tokens", n_tokens, "token count");
  synth->add_option("--seed", seed_flag, "generator seed")
      ->each([&](const std::string&) { seed_given = true; });

  auto* validate =
      app.add_subcommand("validate", "schema-check a features.csv");
  validate->add_option("features", features_path, "features.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = resolve_config(config_path, sets);
    if (seed_given) cfg.seed = seed_flag;
    if (k_flag > 0) cfg.k_folds = k_flag;

    if (analyze->parsed()) {
      const std::string text = read_text_file(manifest_path);
      const std::vector<ManifestEntry> manifest =
          parse_manifest(text, fs::path(manifest_path).parent_path().string());
      const AnalyzeOutcome outcome = run_analyze(
          manifest, cfg, serial ? Exec::serial : Exec::parallel);
      write_text_file(out_path(out_dir, "features.csv"), outcome.csv_text);
      write_text_file(out_path(out_dir, "report.txt"), outcome.report_text);
      std::printf("%d rows, %d skipped, %d failed -> %s\n", outcome.rows,
                  outcome.skipped_tokens, outcome.failed_entries,
                  out_path(out_dir, "features.csv").c_str());
      return outcome.exit_code();
    }
    if (summarize->parsed()) {
      const auto records = load_features(features_path);
      write_text_file(out_path(out_dir, "summary.csv"),
                      run_summarize(records, cfg));
      if (emit_plot)
        write_text_file(out_path(out_dir, "plot_data.csv"),
                        run_plot_data(records, cfg));
      std::printf("wrote %s\n", out_path(out_dir, "summary.csv").c_str());
      return 0;
    }
    if (model->parsed()) {
      write_text_file(out_path(out_dir, "model.csv"),
                      run_model(load_features(features_path), cfg));
      std::printf("wrote %s\n", out_path(out_dir, "model.csv").c_str());
      return 0;
    }
    if (contrasts->parsed()) {
      write_text_file(out_path(out_dir, "contrasts.csv"),
                      run_contrasts(load_features(features_path), cfg));
      std::printf("wrote %s\n", out_path(out_dir, "contrasts.csv").c_str());
      return 0;
    }
    if (classify->parsed()) {
      const ClassifyOutcome outcome =
          run_classify(load_features(features_path), cfg);
      write_text_file(out_path(out_dir, "classify_report.txt"),
                      outcome.report_text);
      write_text_file(out_path(out_dir, "classifier.txt"), outcome.model_text);
      std::fputs(outcome.report_text.c_str(), stdout);
      return 0;
    }
    if (synth->parsed()) {
      const std::string manifest =
          run_synth(out_dir, n_tokens, seed_given ? seed_flag : cfg.seed);
      std::printf("wrote %s\n", manifest.c_str());
      return 0;
    }
    if (validate->parsed()) {
      std::fputs(run_validate(read_text_file(features_path)).c_str(), stdout);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
