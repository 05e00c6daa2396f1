// records.cpp
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

#include "sonolab/records.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "sonolab/errors.hpp"

namespace sonolab {

const char kFeatureCsvHeader[] =
    "speaker,keyword,variety,stress,segment,vowel,duration_ms,m1_cog_hz,"
    "m2_sd_hz,m3_skew,m4_kurt,f1_a0,f1_a1,f1_a2,f2_a0,f2_a1,f2_a2,f3_a0,"
    "f3_a1,f3_a2,f4_a0,f4_a1,f4_a2,f1_rmse,f2_rmse,f3_rmse,f4_rmse,"
    "n_frames_averaged";

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV line; understands doubled-quote escapes.
std::vector<std::string> split_csv(const std::string& line, int row) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted)
    throw Error(Errc::schema_error,
                "row " + std::to_string(row) + ": unterminated quote");
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, int row, const char* col) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end == p || *end != '\0' || !std::isfinite(v))
    throw Error(Errc::schema_error, "row " + std::to_string(row) + ": column " +
                                        col + " is not a finite number: '" +
                                        s + "'");
  return v;
}

const char* kNumCols[] = {
    "duration_ms", "m1_cog_hz", "m2_sd_hz", "m3_skew", "m4_kurt",
    "f1_a0", "f1_a1", "f1_a2", "f2_a0", "f2_a1", "f2_a2",
    "f3_a0", "f3_a1", "f3_a2", "f4_a0", "f4_a1", "f4_a2",
    "f1_rmse", "f2_rmse", "f3_rmse", "f4_rmse"};

}  // namespace

std::string write_records_csv(const std::vector<FeatureRecord>& records) {
  std::string out = kFeatureCsvHeader;
  out += '\n';
  for (const FeatureRecord& r : records) {
    out += csv_escape(r.speaker);
    out += ',';
    out += csv_escape(r.keyword);
    out += ',';
    out += to_string(r.variety);
    out += ',';
    out += to_string(r.stress);
    out += ',';
    out += r.segment;
    out += ',';
    out += r.vowel;
    const double nums[] = {r.duration_ms, r.m1_cog_hz, r.m2_sd_hz,
                           r.m3_skew, r.m4_kurt};
    for (double v : nums) {
      out += ',';
      out += format_number(v);
    }
    for (const auto& f : r.contour)
      for (double v : f) {
        out += ',';
        out += format_number(v);
      }
    for (double v : r.rmse) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += std::to_string(r.n_frames_averaged);
    out += '\n';
  }
  return out;
}

std::vector<FeatureRecord> read_records_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  if (lines.empty())
    throw Error(Errc::schema_error, "empty CSV: missing header");
  if (lines[0] != kFeatureCsvHeader)
    throw Error(Errc::schema_error, "header mismatch: got '" + lines[0] + "'");

  std::vector<FeatureRecord> out;
  for (size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const int row = static_cast<int>(li);
    const auto f = split_csv(lines[li], row);
    if (f.size() != 28)
      throw Error(Errc::schema_error, "row " + std::to_string(row) + ": got " +
                                          std::to_string(f.size()) +
                                          " columns, expected 28");
    FeatureRecord r;
    r.speaker = f[0];
    r.keyword = f[1];
    try {
      r.variety = variety_from_string(f[2]);
      r.stress = stress_from_string(f[3]);
    } catch (const Error& e) {
      throw Error(Errc::schema_error,
                  "row " + std::to_string(row) + ": " + e.what());
    }
    if (!is_sonorant_label(f[4]))
      throw Error(Errc::schema_error, "row " + std::to_string(row) +
                                          ": bad segment '" + f[4] + "'");
    if (!is_vowel_label(f[5]))
      throw Error(Errc::schema_error, "row " + std::to_string(row) +
                                          ": bad vowel '" + f[5] + "'");
    r.segment = f[4];
    r.vowel = f[5];
    double nums[21];
    for (int i = 0; i < 21; ++i)
      nums[i] = parse_num(f[static_cast<size_t>(6 + i)], row, kNumCols[i]);
    r.duration_ms = nums[0];
    r.m1_cog_hz = nums[1];
    r.m2_sd_hz = nums[2];
    r.m3_skew = nums[3];
    r.m4_kurt = nums[4];
    for (int fi = 0; fi < 4; ++fi)
      for (int ci = 0; ci < 3; ++ci)
        r.contour[static_cast<size_t>(fi)][static_cast<size_t>(ci)] =
            nums[5 + fi * 3 + ci];
    for (int fi = 0; fi < 4; ++fi) r.rmse[static_cast<size_t>(fi)] = nums[17 + fi];
    if (!(r.duration_ms > 0.0))
      throw Error(Errc::schema_error,
                  "row " + std::to_string(row) + ": duration_ms must be > 0");
    const double nf = parse_num(f[27], row, "n_frames_averaged");
    if (nf < 0 || nf != std::floor(nf))
      throw Error(Errc::schema_error,
                  "row " + std::to_string(row) +
                      ": n_frames_averaged must be a nonnegative integer");
    r.n_frames_averaged = static_cast<int>(nf);
    out.push_back(std::move(r));
  }
  return out;
}

double record_value(const FeatureRecord& r, const std::string& column) {
  if (column == "duration_ms") return r.duration_ms;
  if (column == "m1_cog_hz") return r.m1_cog_hz;
  if (column == "m2_sd_hz") return r.m2_sd_hz;
  if (column == "m3_skew") return r.m3_skew;
  if (column == "m4_kurt") return r.m4_kurt;
  if (column.size() == 5 && column[0] == 'f' && column[2] == '_' &&
      column[3] == 'a') {
    const int fi = column[1] - '1';
    const int ci = column[4] - '0';
    if (fi >= 0 && fi < 4 && ci >= 0 && ci < 3)
      return r.contour[static_cast<size_t>(fi)][static_cast<size_t>(ci)];
  }
  if (column.size() == 7 && column[0] == 'f' && column.substr(2) == "_rmse") {
    const int fi = column[1] - '1';
    if (fi >= 0 && fi < 4) return r.rmse[static_cast<size_t>(fi)];
  }
  throw Error(Errc::schema_error, "unknown column '" + column + "'");
}

const std::vector<std::string>& record_numeric_columns() {
  static const std::vector<std::string> cols(std::begin(kNumCols),
                                             std::end(kNumCols));
  return cols;
}

}  // namespace sonolab
