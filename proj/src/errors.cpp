// sonolab/errors.cpp
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

#include "sonolab/errors.hpp"

namespace sonolab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unsupported_encoding:  return "UnsupportedEncoding";
    case Errc::malformed_container:   return "MalformedContainer";
    case Errc::syntax_error:          return "SyntaxError";
    case Errc::point_tier_unsupported: return "PointTierUnsupported";
    case Errc::non_monotone_intervals: return "NonMonotoneIntervals";
    case Errc::negative_duration:     return "NegativeDuration";
    case Errc::segment_too_short:     return "SegmentTooShort";
    case Errc::empty_spectrum:        return "EmptySpectrum";
    case Errc::degenerate_spectrum:   return "DegenerateSpectrum";
    case Errc::numerical_failure:     return "NumericalFailure";
    case Errc::root_finding_diverged: return "RootFindingDiverged";
    case Errc::too_few_formants:      return "TooFewFormants";
    case Errc::tracking_failed:       return "TrackingFailed";
    case Errc::non_finite_input:      return "NonFiniteInput";
    case Errc::non_positive_value:    return "NonPositiveValue";
    case Errc::empty_input:           return "EmptyInput";
    case Errc::rank_deficient_design: return "RankDeficientDesign";
    case Errc::insufficient_data:     return "InsufficientData";
    case Errc::single_class_input:    return "SingleClassInput";
    case Errc::non_finite_feature:    return "NonFiniteFeature";
    case Errc::missing_feature:       return "MissingFeature";
    case Errc::too_few_records:       return "TooFewRecords";
    case Errc::unstable_resonator:    return "UnstableResonator";
    case Errc::out_of_band:           return "OutOfBand";
    case Errc::config_error:          return "ConfigError";
    case Errc::schema_error:          return "SchemaError";
  }
  return "UnknownError";
}

}  // namespace sonolab
