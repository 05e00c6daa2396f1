// stats.cpp
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

#include "sonolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "sonolab/errors.hpp"

namespace sonolab {
namespace {

constexpr const char* kEnDash = "–";

std::string factor_value(const FeatureRecord& r, const std::string& factor) {
  if (factor == "variety") return to_string(r.variety);
  if (factor == "stress") return to_string(r.stress);
  if (factor == "segment") return r.segment;
  if (factor == "vowel") return r.vowel;
  if (factor == "speaker") return r.speaker;
  if (factor == "keyword") return r.keyword;
  throw Error(Errc::schema_error, "unknown factor '" + factor + "'");
}

std::string default_reference(const std::string& factor) {
  if (factor == "variety") return "AG";
  if (factor == "stress") return "stressed";
  if (factor == "segment") return "l";
  if (factor == "vowel") return "a";
  return "";
}

struct MeanSd {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD, n-1
};

MeanSd mean_sd(const std::vector<double>& x) {
  MeanSd out;
  out.n = static_cast<int>(x.size());
  if (out.n == 0) return out;
  out.mean = std::accumulate(x.begin(), x.end(), 0.0) / out.n;
  if (out.n >= 2) {
    double ss = 0.0;
    for (double v : x) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (out.n - 1));
  }
  return out;
}

}  // namespace

bool LogPolicy::is_logged(const std::string& dv) const {
  if (dv == "duration_ms" || dv == "m1_cog_hz" || dv == "m2_sd_hz") return true;
  if (dv == "m3_skew" || dv == "m4_kurt") return log_skew_kurt;
  return false;
}

double log_transform(double v) {
  if (!(v > 0.0))
    throw Error(Errc::non_positive_value,
                "cannot log-transform " + std::to_string(v));
  return std::log(v);
}

double analysis_value(const FeatureRecord& r, const std::string& dv,
                      const LogPolicy& policy) {
  const double v = record_value(r, dv);
  return policy.is_logged(dv) ? log_transform(v) : v;
}

std::vector<CellSummary> summarize(const std::vector<FeatureRecord>& records,
                                   const std::string& dv,
                                   const std::vector<std::string>& factors) {
  if (records.empty()) throw Error(Errc::empty_input, "no records");
  if (factors.empty()) throw Error(Errc::empty_input, "no group-by factors");

  std::map<std::vector<std::string>, std::vector<double>> cells;
  for (const FeatureRecord& r : records) {
    std::vector<std::string> key;
    key.reserve(factors.size());
    for (const std::string& f : factors) key.push_back(factor_value(r, f));
    cells[key].push_back(record_value(r, dv));
  }

  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (const auto& [key, vals] : cells) {
    const MeanSd ms = mean_sd(vals);
    CellSummary cs;
    cs.key = key;
    cs.n = ms.n;
    cs.mean = ms.mean;
    if (ms.n >= 2) cs.sd = ms.sd;
    out.push_back(std::move(cs));
  }
  return out;
}

ModelFit fit_factorial(const std::vector<FeatureRecord>& records,
                       const std::string& dv,
                       const std::vector<std::string>& factors,
                       const FitOptions& opt) {
  if (records.empty()) throw Error(Errc::empty_input, "no records");
  if (factors.empty()) throw Error(Errc::empty_input, "no factors");

  ModelFit fit;
  fit.dv = dv;
  fit.logged = opt.log_policy.is_logged(dv);

  // Usable rows: log-scale DVs silently drop non-positive values.
  std::vector<size_t> rows;
  std::vector<double> y;
  for (size_t i = 0; i < records.size(); ++i) {
    try {
      y.push_back(analysis_value(records[i], dv, opt.log_policy));
      rows.push_back(i);
    } catch (const Error& e) {
      if (e.code() != Errc::non_positive_value) throw;
      ++fit.n_excluded;
    }
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error(Errc::insufficient_data, "no usable rows for " + dv);

  if (opt.center_by_speaker) {
    std::map<std::string, std::pair<double, int>> acc;
    double grand = 0.0;
    for (int i = 0; i < n; ++i) {
      auto& a = acc[records[rows[static_cast<size_t>(i)]].speaker];
      a.first += y[static_cast<size_t>(i)];
      a.second += 1;
      grand += y[static_cast<size_t>(i)];
    }
    grand /= n;
    for (int i = 0; i < n; ++i) {
      const auto& a = acc[records[rows[static_cast<size_t>(i)]].speaker];
      y[static_cast<size_t>(i)] += grand - a.first / a.second;
    }
  }

  // Observed levels per factor, reference first removed.
  std::vector<std::vector<std::string>> nonref(factors.size());
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    std::set<std::string> seen;
    for (size_t i : rows) seen.insert(factor_value(records[i], factors[fi]));
    std::string ref = default_reference(factors[fi]);
    if (auto it = opt.reference.find(factors[fi]); it != opt.reference.end())
      ref = it->second;
    if (!seen.count(ref))
      throw Error(Errc::insufficient_data, "reference level '" + ref +
                                               "' of factor '" + factors[fi] +
                                               "' not observed");
    if (seen.size() < 2)
      throw Error(Errc::insufficient_data,
                  "factor '" + factors[fi] + "' has a single observed level");
    fit.reference[factors[fi]] = ref;
    for (const std::string& lv : seen)
      if (lv != ref) nonref[fi].push_back(lv);
  }

  // Full factorial expansion: one term per (factor subset, level choice),
  // subsets ordered by size then by formula position.
  struct Col {
    std::string name;
    std::vector<std::pair<size_t, std::string>> match;  // factor idx -> level
  };
  std::vector<Col> cols;
  cols.push_back({"(Intercept)", {}});
  const size_t nf = factors.size();
  for (size_t sz = 1; sz <= nf; ++sz) {
    std::vector<size_t> idx(sz);
    std::function<void(size_t, size_t)> subsets = [&](size_t pos, size_t from) {
      if (pos == sz) {
        std::vector<size_t> choice(sz, 0);
        while (true) {
          Col c;
          for (size_t k = 0; k < sz; ++k) {
            const std::string& lv = nonref[idx[k]][choice[k]];
            c.name += (k ? ":" : "") + lv;
            c.match.emplace_back(idx[k], lv);
          }
          cols.push_back(std::move(c));
          size_t k = sz;
          while (k-- > 0) {
            if (++choice[k] < nonref[idx[k]].size()) break;
            choice[k] = 0;
            if (k == 0) return;
          }
        }
      }
      for (size_t f = from; f < nf; ++f) {
        idx[pos] = f;
        subsets(pos + 1, f + 1);
      }
    };
    subsets(0, 0);
  }

  const int p = static_cast<int>(cols.size());
  if (n <= p)
    throw Error(Errc::insufficient_data,
                std::to_string(n) + " rows cannot fit " + std::to_string(p) +
                    " parameters");

  Eigen::MatrixXd X(n, p);
  for (int i = 0; i < n; ++i) {
    const FeatureRecord& r = records[rows[static_cast<size_t>(i)]];
    for (int j = 0; j < p; ++j) {
      double v = 1.0;
      for (const auto& [fi, lv] : cols[static_cast<size_t>(j)].match)
        if (factor_value(r, factors[fi]) != lv) {
          v = 0.0;
          break;
        }
      X(i, j) = v;
    }
  }
  Eigen::VectorXd yv = Eigen::Map<Eigen::VectorXd>(y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    const auto perm = qr.colsPermutation().indices();
    std::string aliased;
    for (int j = static_cast<int>(qr.rank()); j < p; ++j) {
      if (!aliased.empty()) aliased += ", ";
      aliased += cols[static_cast<size_t>(perm[j])].name;
    }
    throw Error(Errc::rank_deficient_design, "aliased terms: " + aliased);
  }

  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd fitted = X * beta;
  const Eigen::VectorXd resid = yv - fitted;
  const double ssr = resid.squaredNorm();
  const double df = n - p;
  const double s2 = ssr / df;
  const Eigen::MatrixXd xtx_inv =
      (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(p, p));

  fit.n = n;
  fit.df = df;
  fit.residual_sd = std::sqrt(s2);
  fit.fitted.assign(fitted.data(), fitted.data() + n);
  for (int j = 0; j < p; ++j) {
    ModelTerm t;
    t.term = cols[static_cast<size_t>(j)].name;
    t.estimate = beta(j);
    t.se = std::sqrt(std::max(0.0, s2 * xtx_inv(j, j)));
    if (t.se > 0.0) {
      t.t = t.estimate / t.se;
      t.p = 2.0 * student_t_sf(std::fabs(t.t), df);
    } else {
      t.t = t.estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      t.p = t.estimate == 0.0 ? 1.0 : 0.0;
    }
    fit.terms.push_back(std::move(t));
  }
  return fit;
}

WelchResult welch_t(const std::vector<double>& x1,
                    const std::vector<double>& x2) {
  const int n1 = static_cast<int>(x1.size());
  const int n2 = static_cast<int>(x2.size());
  if (n1 < 2 || n2 < 2)
    throw Error(Errc::insufficient_data,
                "Welch t needs at least 2 observations per group");
  const MeanSd a = mean_sd(x1), b = mean_sd(x2);
  const double v1 = a.sd * a.sd, v2 = b.sd * b.sd;
  const double q1 = v1 / n1, q2 = v2 / n2;
  WelchResult out;
  out.estimate = a.mean - b.mean;
  const double se2 = q1 + q2;
  if (se2 <= 0.0) {
    out.df = n1 + n2 - 2;
    if (out.estimate == 0.0) {
      out.t = 0.0;
      out.p = 1.0;
    } else {
      out.t = std::copysign(std::numeric_limits<double>::infinity(),
                            out.estimate);
      out.p = 0.0;
    }
    return out;
  }
  out.t = out.estimate / std::sqrt(se2);
  out.df = se2 * se2 / (q1 * q1 / (n1 - 1) + q2 * q2 / (n2 - 1));
  out.p = 2.0 * student_t_sf(std::fabs(out.t), out.df);
  return out;
}

std::vector<double> holm_adjust(const std::vector<double>& p) {
  const size_t m = p.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return p[a] < p[b]; });
  std::vector<double> out(m, 0.0);
  double running = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double adj = std::min(1.0, static_cast<double>(m - i) * p[order[i]]);
    running = std::max(running, adj);
    out[order[i]] = running;
  }
  return out;
}

std::vector<ContrastRow> pairwise_contrasts(
    const std::vector<FeatureRecord>& records, const std::string& dv,
    Stress stratum, const LogPolicy& policy) {
  if (records.empty()) throw Error(Errc::empty_input, "no records");

  static const std::vector<std::string> kSegs = {"l", "m", "n", "r"};
  static const std::vector<Variety> kVars = {Variety::AG, Variety::CG};

  std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
  for (const FeatureRecord& r : records) {
    if (r.stress != stratum) continue;
    try {
      cells[{to_string(r.variety), r.segment}].push_back(
          analysis_value(r, dv, policy));
    } catch (const Error& e) {
      if (e.code() != Errc::non_positive_value) throw;
    }
  }

  auto label = [](const std::string& v, const std::string& s) {
    return v + " [" + s + "]";
  };
  std::vector<ContrastRow> out;

  auto add = [&](const std::string& v1, const std::string& s1,
                 const std::string& v2, const std::string& s2,
                 const std::string& family) {
    ContrastRow row;
    row.contrast = label(v1, s1) + " " + kEnDash + " " + label(v2, s2);
    row.family = family;
    const auto& c1 = cells[{v1, s1}];
    const auto& c2 = cells[{v2, s2}];
    row.n1 = static_cast<int>(c1.size());
    row.n2 = static_cast<int>(c2.size());
    if (row.n1 >= 2 && row.n2 >= 2) {
      const WelchResult w = welch_t(c1, c2);
      row.estimate = w.estimate;
      row.df = w.df;
      row.t = w.t;
      row.p = w.p;
    }
    out.push_back(std::move(row));
  };

  for (const Variety v : kVars)
    for (size_t i = 0; i < kSegs.size(); ++i)
      for (size_t j = i + 1; j < kSegs.size(); ++j)
        add(to_string(v), kSegs[i], to_string(v), kSegs[j],
            "segment-within-variety");
  for (const std::string& s : kSegs)
    add("AG", s, "CG", s, "variety-within-segment");

  // Holm within each family over the rows that have a p-value.
  for (const char* family :
       {"segment-within-variety", "variety-within-segment"}) {
    std::vector<size_t> idx;
    std::vector<double> ps;
    for (size_t i = 0; i < out.size(); ++i)
      if (out[i].family == family && out[i].p) {
        idx.push_back(i);
        ps.push_back(*out[i].p);
      }
    const std::vector<double> adj = holm_adjust(ps);
    for (size_t k = 0; k < idx.size(); ++k) out[idx[k]].p_holm = adj[k];
  }
  return out;
}

double reg_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(Errc::non_finite_input, "beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0))
    return 1.0 - reg_incomplete_beta(b, a, 1.0 - x);

  // Lentz continued fraction for the standard expansion.
  const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                          std::log(a) - (std::lgamma(a) + std::lgamma(b) -
                                         std::lgamma(a + b));
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int m = 0; m <= 500; ++m) {
    double numer;
    if (m == 0) {
      numer = 1.0;
    } else if (m % 2 == 0) {
      const double k = m / 2.0;
      numer = k * (b - k) * x / ((a + 2.0 * k - 1.0) * (a + 2.0 * k));
    } else {
      const double k = (m - 1.0) / 2.0;
      numer = -(a + k) * (a + b + k) * x /
              ((a + 2.0 * k) * (a + 2.0 * k + 1.0));
    }
    d = 1.0 + numer * d;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = 1.0 + numer / c;
    if (std::fabs(c) < tiny) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(ln_front) * f;
}

double student_t_sf(double t, double df) {
  if (!(df > 0.0))
    throw Error(Errc::non_finite_input, "degrees of freedom must be positive");
  if (std::isnan(t)) throw Error(Errc::non_finite_input, "NaN t statistic");
  if (std::isinf(t)) return t > 0.0 ? 0.0 : 1.0;
  if (t < 0.0) return 1.0 - student_t_sf(-t, df);
  const double x = df / (df + t * t);
  return 0.5 * reg_incomplete_beta(0.5 * df, 0.5, x);
}

}  // namespace sonolab
