// sonolab/stats.hpp
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

#ifndef SONOLAB_STATS_HPP
#define SONOLAB_STATS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sonolab/records.hpp"

namespace sonolab {

/// Which dependent variables are analyzed on the natural-log scale.
/// Duration and the first two moments default to log; skewness and kurtosis
/// can be negative and stay raw unless log_skew_kurt is set.
struct LogPolicy {
  bool log_skew_kurt = false;

  bool is_logged(const std::string& dv) const;
};

/// Natural log; throws NonPositiveValue when v <= 0.
double log_transform(double v);

/// DV value of one record on the analysis scale chosen by the policy.
double analysis_value(const FeatureRecord& r, const std::string& dv,
                      const LogPolicy& policy);

struct CellSummary {
  std::vector<std::string> key;  // factor values, group-by order
  int n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // absent when n < 2
};

/// Per-cell mean and sample SD (n-1) of a raw-scale DV column, cells sorted
/// by key. Factors name record fields: variety, stress, segment, vowel,
/// speaker, keyword.
std::vector<CellSummary> summarize(const std::vector<FeatureRecord>& records,
                                   const std::string& dv,
                                   const std::vector<std::string>& factors);

struct ModelTerm {
  std::string term;  // "(Intercept)", "CG", "m", "CG:m", ...
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 0.0;
};

struct ModelFit {
  std::string dv;
  bool logged = false;
  std::vector<ModelTerm> terms;
  double df = 0.0;          // residual df, n - p
  double residual_sd = 0.0;
  int n = 0;
  int n_excluded = 0;  // records dropped by NonPositiveValue on a log DV
  std::map<std::string, std::string> reference;  // factor -> reference level
  std::vector<double> fitted;  // per input record, analysis scale
};

struct FitOptions {
  // factor -> reference level; defaults: AG, stressed, l, a.
  std::map<std::string, std::string> reference;
  bool center_by_speaker = false;
  LogPolicy log_policy;
};

/// OLS on the treatment-coded full-factorial design over the given factors
/// (formula order; all interactions included). Throws InsufficientData and
/// RankDeficientDesign (message lists aliased terms).
ModelFit fit_factorial(const std::vector<FeatureRecord>& records,
                       const std::string& dv,
                       const std::vector<std::string>& factors,
                       const FitOptions& opt = {});

struct WelchResult {
  double estimate = 0.0;  // mean(x1) - mean(x2)
  double t = 0.0;
  double df = 0.0;
  double p = 0.0;  // two-sided
};

WelchResult welch_t(const std::vector<double>& x1,
                    const std::vector<double>& x2);

/// Step-down Holm adjustment; output is monotone and order-preserving.
std::vector<double> holm_adjust(const std::vector<double>& p);

struct ContrastRow {
  std::string contrast;  // e.g. "AG [l] – AG [r]"
  std::string family;    // "segment-within-variety" or "variety-within-segment"
  int n1 = 0, n2 = 0;
  std::optional<double> estimate;
  std::optional<double> df;
  std::optional<double> t;
  std::optional<double> p;       // unadjusted
  std::optional<double> p_holm;  // Holm within family
};

/// Welch contrasts between (variety, segment) cells within one stress
/// stratum: all segment pairs within each variety, and both varieties
/// within each segment. Cells with < 2 observations keep their row with
/// absent statistics.
std::vector<ContrastRow> pairwise_contrasts(
    const std::vector<FeatureRecord>& records, const std::string& dv,
    Stress stratum, const LogPolicy& policy = {});

/// Upper tail P(T > t) of Student's t with df degrees of freedom.
double student_t_sf(double t, double df);

/// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double reg_incomplete_beta(double a, double b, double x);

}  // namespace sonolab

#endif  // SONOLAB_STATS_HPP
