// sonolab/errors.hpp
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

#ifndef SONOLAB_ERRORS_HPP
#define SONOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sonolab {

enum class Errc {
  // audio / annotation input
  unsupported_encoding,
  malformed_container,
  syntax_error,
  point_tier_unsupported,
  non_monotone_intervals,
  negative_duration,
  // spectrum
  segment_too_short,
  empty_spectrum,
  degenerate_spectrum,
  // formants
  numerical_failure,
  root_finding_diverged,
  too_few_formants,
  tracking_failed,
  // contour / stats
  non_finite_input,
  non_positive_value,
  empty_input,
  rank_deficient_design,
  insufficient_data,
  // classifier
  single_class_input,
  non_finite_feature,
  missing_feature,
  too_few_records,
  // synthesis
  unstable_resonator,
  out_of_band,
  // cli
  config_error,
  schema_error,
};

const char* errc_name(Errc c);

/// Every failure mode in the library is reported as an Error carrying a
/// machine-readable code; nothing in the library calls abort() or leaks a
/// foreign exception type for malformed input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sonolab

#endif  // SONOLAB_ERRORS_HPP
