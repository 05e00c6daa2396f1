// classify.cpp
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

#include "sonolab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "sonolab/errors.hpp"

namespace sonolab {
namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& default_feature_names() {
  static const std::vector<std::string> names = {
      "log_duration_ms", "log_m1_cog_hz", "log_m2_sd_hz", "m3_skew", "m4_kurt",
      "f1_a0", "f1_a1", "f1_a2", "f2_a0", "f2_a1", "f2_a2",
      "f3_a0", "f3_a1", "f3_a2", "f4_a0", "f4_a1", "f4_a2"};
  return names;
}

std::vector<double> feature_vector(const FeatureRecord& r,
                                   const std::vector<std::string>& names) {
  std::vector<double> out;
  out.reserve(names.size());
  for (const std::string& name : names) {
    double v;
    try {
      if (name.rfind("log_", 0) == 0) {
        v = record_value(r, name.substr(4));
        if (!(v > 0.0))
          throw Error(Errc::non_finite_feature,
                      "feature " + name + " undefined for value " +
                          std::to_string(v));
        v = std::log(v);
      } else {
        v = record_value(r, name);
      }
    } catch (const Error& e) {
      if (e.code() == Errc::schema_error)
        throw Error(Errc::missing_feature, "no such feature '" + name + "'");
      throw;
    }
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_feature, "feature " + name + " not finite");
    out.push_back(v);
  }
  return out;
}

double logistic_loss(const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y,
                     const std::vector<double>& weights, double bias,
                     double lambda, std::vector<double>* grad_w,
                     double* grad_b) {
  const size_t n = x.size();
  const size_t p = weights.size();
  double loss = 0.0;
  if (grad_w) grad_w->assign(p, 0.0);
  if (grad_b) *grad_b = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double z = bias;
    for (size_t j = 0; j < p; ++j) z += weights[j] * x[i][j];
    loss += softplus(z) - y[i] * z;
    if (grad_w || grad_b) {
      const double g = sigmoid(z) - y[i];
      if (grad_w)
        for (size_t j = 0; j < p; ++j) (*grad_w)[j] += g * x[i][j];
      if (grad_b) *grad_b += g;
    }
  }
  double reg = 0.0;
  for (size_t j = 0; j < p; ++j) {
    reg += weights[j] * weights[j];
    if (grad_w) (*grad_w)[j] += lambda * weights[j];
  }
  return loss + 0.5 * lambda * reg;
}

ClassifierModel train(const std::vector<FeatureRecord>& records,
                      const ClassifyConfig& cfg) {
  if (records.empty()) throw Error(Errc::empty_input, "no records");
  const std::vector<std::string>& names =
      cfg.features.empty() ? default_feature_names() : cfg.features;
  const size_t p = names.size();

  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(records.size());
  for (const FeatureRecord& r : records) {
    x.push_back(feature_vector(r, names));
    y.push_back(r.variety == Variety::CG ? 1 : 0);
  }
  const int n_pos = std::accumulate(y.begin(), y.end(), 0);
  if (n_pos == 0 || n_pos == static_cast<int>(y.size()))
    throw Error(Errc::single_class_input,
                "training data contains a single variety");

  // Canonical row order makes the summation, and hence the whole training
  // trajectory, independent of input permutation.
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (y[a] != y[b]) return y[a] < y[b];
    return x[a] < x[b];
  });
  {
    std::vector<std::vector<double>> x2;
    std::vector<int> y2;
    x2.reserve(x.size());
    y2.reserve(y.size());
    for (size_t i : order) {
      x2.push_back(std::move(x[i]));
      y2.push_back(y[i]);
    }
    x = std::move(x2);
    y = std::move(y2);
  }

  const size_t n = x.size();
  ClassifierModel m;
  m.feature_names = names;
  m.mean.assign(p, 0.0);
  m.sd.assign(p, 0.0);
  for (size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i][j];
    m.mean[j] = s / static_cast<double>(n);
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double d = x[i][j] - m.mean[j];
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    m.sd[j] = sd > 0.0 ? sd : 1.0;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j) x[i][j] = (x[i][j] - m.mean[j]) / m.sd[j];

  m.l2_lambda = cfg.l2_lambda < 0.0 ? 1e-3 * static_cast<double>(n)
                                    : cfg.l2_lambda;

  std::vector<double> w(p, 0.0), g(p);
  double b = 0.0, gb = 0.0;
  double loss = logistic_loss(x, y, w, b, m.l2_lambda, &g, &gb);
  double step = 1.0 / static_cast<double>(n);
  int iter = 0;
  double gnorm = 0.0;
  std::vector<double> wt(p);
  for (; iter < cfg.max_iter; ++iter) {
    gnorm = std::fabs(gb);
    double gsq = gb * gb;
    for (size_t j = 0; j < p; ++j) {
      gnorm = std::max(gnorm, std::fabs(g[j]));
      gsq += g[j] * g[j];
    }
    if (gnorm < cfg.tol) break;

    step *= 2.0;  // warm start, then backtrack
    double new_loss = 0.0;
    double bt = b;
    for (int back = 0; back < 60; ++back) {
      for (size_t j = 0; j < p; ++j) wt[j] = w[j] - step * g[j];
      bt = b - step * gb;
      new_loss = logistic_loss(x, y, wt, bt, m.l2_lambda, nullptr, nullptr);
      if (new_loss <= loss - 1e-4 * step * gsq) break;
      step *= 0.5;
    }
    w.swap(wt);
    b = bt;
    loss = logistic_loss(x, y, w, b, m.l2_lambda, &g, &gb);
  }

  m.weights = std::move(w);
  m.bias = b;
  m.iterations = iter;
  m.final_loss = loss;
  m.grad_norm = gnorm;
  return m;
}

Prediction predict(const ClassifierModel& model, const FeatureRecord& r) {
  const std::vector<double> x = feature_vector(r, model.feature_names);
  double z = model.bias;
  for (size_t j = 0; j < x.size(); ++j)
    z += model.weights[j] * (x[j] - model.mean[j]) / model.sd[j];
  Prediction out;
  out.p_cg = sigmoid(z);
  out.label = out.p_cg >= 0.5 ? Variety::CG : Variety::AG;
  return out;
}

CrossValidation cross_validate(const std::vector<FeatureRecord>& records,
                               int k, std::uint64_t seed,
                               const ClassifyConfig& cfg) {
  if (k < 2) throw Error(Errc::too_few_records, "need at least 2 folds");
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < records.size(); ++i)
    (records[i].variety == Variety::CG ? pos : neg).push_back(i);
  if (static_cast<int>(pos.size()) < k || static_cast<int>(neg.size()) < k)
    throw Error(Errc::too_few_records,
                "each variety needs at least k = " + std::to_string(k) +
                    " records");

  // Portable Fisher-Yates from the named generator.
  std::mt19937_64 gen(seed);
  auto shuffle = [&gen](std::vector<size_t>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[gen() % i]);
  };
  shuffle(pos);
  shuffle(neg);

  CrossValidation cv;
  cv.k = k;
  cv.seed = seed;
  cv.fold_of_record.assign(records.size(), 0);
  for (size_t i = 0; i < pos.size(); ++i)
    cv.fold_of_record[pos[i]] = static_cast<int>(i % static_cast<size_t>(k));
  for (size_t i = 0; i < neg.size(); ++i)
    cv.fold_of_record[neg[i]] = static_cast<int>(i % static_cast<size_t>(k));

  for (int f = 0; f < k; ++f) {
    std::vector<FeatureRecord> train_set, test_set;
    for (size_t i = 0; i < records.size(); ++i)
      (cv.fold_of_record[i] == f ? test_set : train_set).push_back(records[i]);
    const ClassifierModel model = train(train_set, cfg);
    int correct = 0;
    for (const FeatureRecord& r : test_set)
      if (predict(model, r).label == r.variety) ++correct;
    cv.fold_accuracy.push_back(static_cast<double>(correct) /
                               static_cast<double>(test_set.size()));
  }
  cv.mean_accuracy =
      std::accumulate(cv.fold_accuracy.begin(), cv.fold_accuracy.end(), 0.0) /
      static_cast<double>(k);
  return cv;
}

std::string serialize_classifier(const ClassifierModel& model) {
  std::string out = "sonolab classifier v1\n";
  out += "features " + std::to_string(model.feature_names.size()) + "\n";
  out += "lambda " + fmt17(model.l2_lambda) + "\n";
  out += "iterations " + std::to_string(model.iterations) + "\n";
  out += "final_loss " + fmt17(model.final_loss) + "\n";
  out += "grad_norm " + fmt17(model.grad_norm) + "\n";
  out += "bias " + fmt17(model.bias) + "\n";
  for (size_t j = 0; j < model.feature_names.size(); ++j)
    out += "feature " + model.feature_names[j] + " " + fmt17(model.mean[j]) +
           " " + fmt17(model.sd[j]) + " " + fmt17(model.weights[j]) + "\n";
  return out;
}

ClassifierModel parse_classifier(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto fail = [](const std::string& why) -> Error {
    return Error(Errc::schema_error, "classifier file: " + why);
  };
  if (!std::getline(in, line) || line != "sonolab classifier v1")
    throw fail("bad magic line");

  ClassifierModel m;
  size_t n_features = 0;
  auto expect = [&](const std::string& key) -> std::string {
    if (!std::getline(in, line)) throw fail("missing '" + key + "'");
    if (line.rfind(key + " ", 0) != 0) throw fail("expected '" + key + "'");
    return line.substr(key.size() + 1);
  };
  n_features = std::stoul(expect("features"));
  m.l2_lambda = std::stod(expect("lambda"));
  m.iterations = std::stoi(expect("iterations"));
  m.final_loss = std::stod(expect("final_loss"));
  m.grad_norm = std::stod(expect("grad_norm"));
  m.bias = std::stod(expect("bias"));
  for (size_t j = 0; j < n_features; ++j) {
    if (!std::getline(in, line)) throw fail("truncated feature list");
    std::istringstream fs(line);
    std::string tag, name;
    double mean, sd, weight;
    if (!(fs >> tag >> name >> mean >> sd >> weight) || tag != "feature")
      throw fail("bad feature line: " + line);
    if (!(sd > 0.0)) throw fail("non-positive sd for " + name);
    m.feature_names.push_back(name);
    m.mean.push_back(mean);
    m.sd.push_back(sd);
    m.weights.push_back(weight);
  }
  return m;
}

}  // namespace sonolab
