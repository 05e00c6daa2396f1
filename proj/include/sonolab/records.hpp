// sonolab/records.hpp
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

#ifndef SONOLAB_RECORDS_HPP
#define SONOLAB_RECORDS_HPP

#include <array>
#include <string>
#include <vector>

#include "sonolab/tokens.hpp"

namespace sonolab {

/// One analyzed token: factor metadata, spectral moments of the sonorant,
/// and quadratic contour coefficients of the following vowel's F1..F4.
struct FeatureRecord {
  std::string speaker;
  std::string keyword;
  Variety variety = Variety::AG;
  Stress stress = Stress::stressed;
  std::string segment;  // l, m, n, r
  std::string vowel;    // a, i

  double duration_ms = 0.0;
  double m1_cog_hz = 0.0;
  double m2_sd_hz = 0.0;
  double m3_skew = 0.0;
  double m4_kurt = 0.0;

  std::array<std::array<double, 3>, 4> contour{};  // [formant-1][a0,a1,a2]
  std::array<double, 4> rmse{};                    // per formant
  int n_frames_averaged = 0;
};

extern const char kFeatureCsvHeader[];

/// %.6g, the pinned number format for all CSV output.
std::string format_number(double v);

std::string write_records_csv(const std::vector<FeatureRecord>& records);

/// Strict reader: exact header, 28 columns per row, closed factor sets,
/// finite numerics, duration > 0. Violations throw SchemaError naming the
/// 1-based row.
std::vector<FeatureRecord> read_records_csv(const std::string& text);

/// Numeric column accessor by CSV column name (duration_ms .. f4_rmse).
/// Unknown names throw SchemaError.
double record_value(const FeatureRecord& r, const std::string& column);

/// The numeric columns record_value understands, in CSV order.
const std::vector<std::string>& record_numeric_columns();

}  // namespace sonolab

#endif  // SONOLAB_RECORDS_HPP
