// sonolab/classify.hpp
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

#ifndef SONOLAB_CLASSIFY_HPP
#define SONOLAB_CLASSIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sonolab/records.hpp"
#include "sonolab/stats.hpp"

namespace sonolab {

/// Binary logistic regression predicting variety (CG coded 1).
struct ClassifierModel {
  std::vector<std::string> feature_names;
  std::vector<double> mean;  // train-split standardization
  std::vector<double> sd;
  std::vector<double> weights;  // one per feature, standardized space
  double bias = 0.0;
  double l2_lambda = 0.0;
  int iterations = 0;
  double final_loss = 0.0;
  double grad_norm = 0.0;
};

struct ClassifyConfig {
  // Negative = auto: lambda is 1e-3 * n at train time.
  double l2_lambda = -1.0;
  double tol = 1e-8;  // gradient infinity-norm
  int max_iter = 200000;
  std::vector<std::string> features;  // empty = default 17-feature set
};

/// log duration, log m1, log m2, raw m3/m4, 12 contour coefficients.
const std::vector<std::string>& default_feature_names();

/// Feature vector of one record; log features throw NonFiniteFeature on
/// non-positive values.
std::vector<double> feature_vector(const FeatureRecord& r,
                                   const std::vector<std::string>& names);

/// L2-regularized NLL minimized by full-batch gradient descent with
/// backtracking line search. Records are canonically ordered internally so
/// the result does not depend on input order. Throws SingleClassInput.
ClassifierModel train(const std::vector<FeatureRecord>& records,
                      const ClassifyConfig& cfg = {});

struct Prediction {
  double p_cg = 0.0;
  Variety label = Variety::AG;
};

Prediction predict(const ClassifierModel& model, const FeatureRecord& r);

struct CrossValidation {
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
  std::vector<int> fold_of_record;  // index into folds, record order
  std::string rng = "mt19937_64";
  std::uint64_t seed = 0;
  int k = 0;
};

/// Stratified k-fold with seeded shuffling; standardization is refit on each
/// training split. Throws TooFewRecords when a class has fewer members
/// than k.
CrossValidation cross_validate(const std::vector<FeatureRecord>& records,
                               int k, std::uint64_t seed,
                               const ClassifyConfig& cfg = {});

std::string serialize_classifier(const ClassifierModel& model);
ClassifierModel parse_classifier(const std::string& text);

/// Loss and gradient of the training objective at (weights, bias) over a
/// standardized design; exposed for the finite-difference check.
double logistic_loss(const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y,
                     const std::vector<double>& weights, double bias,
                     double lambda, std::vector<double>* grad_w = nullptr,
                     double* grad_b = nullptr);

}  // namespace sonolab

#endif  // SONOLAB_CLASSIFY_HPP
