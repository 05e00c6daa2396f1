// config.cpp
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

#include "sonolab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sonolab/errors.hpp"

namespace sonolab {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double as_double(const std::string& key, const std::string& value) {
  const char* p = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end == p || *trim(end).c_str() != '\0')
    throw Error(Errc::config_error, key + ": not a number: '" + value + "'");
  return v;
}

int as_int(const std::string& key, const std::string& value) {
  const double v = as_double(key, value);
  if (v != static_cast<long long>(v))
    throw Error(Errc::config_error, key + ": not an integer: '" + value + "'");
  return static_cast<int>(v);
}

bool as_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error(Errc::config_error, key + ": not a boolean: '" + value + "'");
}

// "[lo, hi]"
void as_span(const std::string& key, const std::string& value, double* lo,
             double* hi) {
  std::string v = trim(value);
  if (v.size() < 5 || v.front() != '[' || v.back() != ']')
    throw Error(Errc::config_error, key + ": expected [lo, hi]");
  v = v.substr(1, v.size() - 2);
  const size_t comma = v.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::config_error, key + ": expected [lo, hi]");
  *lo = as_double(key, trim(v.substr(0, comma)));
  *hi = as_double(key, trim(v.substr(comma + 1)));
  if (!(*lo >= 0.0) || !(*hi <= 1.0) || !(*lo < *hi))
    throw Error(Errc::config_error, key + ": span must satisfy 0 <= lo < hi <= 1");
}

}  // namespace

void config_set(Config& cfg, const std::string& key,
                const std::string& value) {
  if (key == "spectrum.window_ms") {
    cfg.spectrum.window_ms = as_double(key, value);
    if (!(cfg.spectrum.window_ms > 0.0))
      throw Error(Errc::config_error, key + ": must be positive");
  } else if (key == "spectrum.overlap") {
    cfg.spectrum.overlap = as_double(key, value);
    if (cfg.spectrum.overlap < 0.0 || cfg.spectrum.overlap >= 1.0)
      throw Error(Errc::config_error, key + ": must be in [0, 1)");
  } else if (key == "spectrum.span") {
    as_span(key, value, &cfg.spectrum.span_lo, &cfg.spectrum.span_hi);
  } else if (key == "spectrum.exclude_dc") {
    cfg.spectrum.exclude_dc = as_bool(key, value);
  } else if (key == "formants.ceiling_hz") {
    cfg.formants.ceiling_hz = as_double(key, value);
    if (!(cfg.formants.ceiling_hz > 200.0))
      throw Error(Errc::config_error, key + ": implausibly low ceiling");
  } else if (key == "formants.order") {
    cfg.formants.order = as_int(key, value);
    if (cfg.formants.order < 2)
      throw Error(Errc::config_error, key + ": order must be >= 2");
  } else if (key == "formants.frame_ms") {
    cfg.formants.frame_ms = as_double(key, value);
    if (!(cfg.formants.frame_ms > 0.0))
      throw Error(Errc::config_error, key + ": must be positive");
  } else if (key == "formants.hop_ms") {
    cfg.formants.hop_ms = as_double(key, value);
    if (!(cfg.formants.hop_ms > 0.0))
      throw Error(Errc::config_error, key + ": must be positive");
  } else if (key == "formants.max_bandwidth_hz") {
    cfg.formants.max_bandwidth_hz = as_double(key, value);
    if (!(cfg.formants.max_bandwidth_hz > 0.0))
      throw Error(Errc::config_error, key + ": must be positive");
  } else if (key == "stats.center_speaker") {
    cfg.stats.center_speaker = as_bool(key, value);
  } else if (key == "stats.log_skew_kurt") {
    cfg.stats.log_skew_kurt = as_bool(key, value);
  } else if (key == "classify.l2_lambda") {
    // "auto" = 1e-3 * n chosen at train time.
    if (trim(value) == "auto")
      cfg.classify.l2_lambda = -1.0;
    else {
      cfg.classify.l2_lambda = as_double(key, value);
      if (cfg.classify.l2_lambda < 0.0)
        throw Error(Errc::config_error, key + ": must be >= 0 or 'auto'");
    }
  } else if (key == "classify.tol") {
    cfg.classify.tol = as_double(key, value);
    if (!(cfg.classify.tol > 0.0))
      throw Error(Errc::config_error, key + ": must be positive");
  } else if (key == "classify.max_iter") {
    cfg.classify.max_iter = as_int(key, value);
    if (cfg.classify.max_iter < 1)
      throw Error(Errc::config_error, key + ": must be >= 1");
  } else if (key == "classify.k_folds") {
    cfg.k_folds = as_int(key, value);
    if (cfg.k_folds < 2)
      throw Error(Errc::config_error, key + ": must be >= 2");
  } else if (key == "seed") {
    const double v = as_double(key, value);
    if (v < 0 || v != static_cast<std::uint64_t>(v))
      throw Error(Errc::config_error, key + ": must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else {
    throw Error(Errc::config_error, "unknown config key '" + key + "'");
  }
}

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::config_error, "line " + std::to_string(lineno) +
                                          ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      config_set(cfg, key, value);
    } catch (const Error& e) {
      // Strip the inner code name so the wrapped message reads cleanly.
      std::string msg = e.what();
      const std::string prefix = std::string(errc_name(e.code())) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw Error(Errc::config_error,
                  "line " + std::to_string(lineno) + ": " + msg);
    }
  }
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::config_error, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sonolab
