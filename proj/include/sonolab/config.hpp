// sonolab/config.hpp
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

#ifndef SONOLAB_CONFIG_HPP
#define SONOLAB_CONFIG_HPP

#include <cstdint>
#include <string>

#include "sonolab/classify.hpp"
#include "sonolab/formants.hpp"
#include "sonolab/spectrum.hpp"

namespace sonolab {

/// All tunables, defaults exactly as each module documents them. Flat
/// dotted-key text format, one `key = value` per line, `#` comments.
/// Unknown keys are ConfigError.
struct Config {
  SpectrumConfig spectrum;
  FormantConfig formants;

  struct Stats {
    bool center_speaker = false;
    bool log_skew_kurt = false;
  } stats;

  ClassifyConfig classify;
  int k_folds = 5;
  std::uint64_t seed = 1;
};

/// Sets one dotted key from its string value; ConfigError on unknown key or
/// unparseable value.
void config_set(Config& cfg, const std::string& key, const std::string& value);

Config parse_config(const std::string& text);

/// parse_config over a file's contents; ConfigError if unreadable.
Config load_config_file(const std::string& path);

}  // namespace sonolab

#endif  // SONOLAB_CONFIG_HPP
