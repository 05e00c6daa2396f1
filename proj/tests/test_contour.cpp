// test_contour.cpp
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

#include <array>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sonolab/contour.hpp"

using namespace sonolab;

namespace {

std::array<double, 19> sample(double a0, double a1, double a2) {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t) y[static_cast<size_t>(t)] = a0 + a1 * t + a2 * t * t;
  return y;
}

double ssr(const std::array<double, 19>& y, const PolyCoeffs& c) {
  double s = 0.0;
  for (int t = 0; t < 19; ++t) {
    const double r = y[static_cast<size_t>(t)] - eval_quadratic(c, t);
    s += r * r;
  }
  return s;
}

}  // namespace

TEST_CASE("a constant contour fits as (c, 0, 0) with zero rmse") {
  const auto c = fit_quadratic(sample(500.0, 0.0, 0.0));
  CHECK(c.a0 == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(c.a1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
  CHECK(c.a2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
  CHECK(c.rmse == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("an exact quadratic is recovered to rounding error") {
  const auto c = fit_quadratic(sample(400.0, 10.0, -0.5));
  CHECK(c.a0 == doctest::Approx(400.0).epsilon(1e-9));
  CHECK(c.a1 == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(c.a2 == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(c.rmse < 1e-9);
}

TEST_CASE("eval_quadratic at the last grid step") {
  PolyCoeffs c;
  c.a0 = 400.0;
  c.a1 = 10.0;
  c.a2 = -0.5;
  CHECK(eval_quadratic(c, 0.0) == doctest::Approx(400.0).epsilon(1e-12));
  CHECK(eval_quadratic(c, 18.0) == doctest::Approx(418.0).epsilon(1e-12));
}

TEST_CASE("non-polynomial data: QR agrees with the normal equations") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 1500.0 + 120.0 * std::sin(0.35 * t);
  const auto c = fit_quadratic(y);
  const auto n = oracles::normal_equations_quadratic(y);
  CHECK(c.a0 == doctest::Approx(n[0]).epsilon(1e-9));
  CHECK(c.a1 == doctest::Approx(n[1]).epsilon(1e-9));
  CHECK(c.a2 == doctest::Approx(n[2]).epsilon(1e-9));
  CHECK(c.rmse == doctest::Approx(std::sqrt(ssr(y, c) / 19.0)).epsilon(1e-9));
}

TEST_CASE("least-squares residual is orthogonal to the design columns") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 900.0 + 40.0 * std::sin(0.8 * t + 0.3);
  const auto c = fit_quadratic(y);

  double norm_y = 0.0;
  for (double v : y) norm_y += v * v;
  norm_y = std::sqrt(norm_y);

  double d0 = 0.0, d1 = 0.0, d2 = 0.0;
  for (int t = 0; t < 19; ++t) {
    const double r = y[static_cast<size_t>(t)] - eval_quadratic(c, t);
    d0 += r;
    d1 += r * t;
    d2 += r * t * t;
  }
  CHECK(std::fabs(d0) < 1e-8 * norm_y);
  CHECK(std::fabs(d1) < 1e-8 * norm_y * 18.0);
  CHECK(std::fabs(d2) < 1e-8 * norm_y * 324.0);
}

TEST_CASE("a vertical shift moves only the constant term") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 700.0 + 12.0 * t + 0.25 * t * t +
                                 5.0 * std::cos(1.1 * t);
  auto shifted = y;
  for (double& v : shifted) v += 250.0;

  const auto a = fit_quadratic(y);
  const auto b = fit_quadratic(shifted);
  CHECK(b.a0 == doctest::Approx(a.a0 + 250.0).epsilon(1e-10));
  CHECK(b.a1 == doctest::Approx(a.a1).epsilon(1e-9));
  CHECK(b.a2 == doctest::Approx(a.a2).epsilon(1e-9));
  CHECK(b.rmse == doctest::Approx(a.rmse).epsilon(1e-9));
}

TEST_CASE("reversing the contour maps the coefficients by t -> 18 - t") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 1200.0 - 18.0 * t + 0.7 * t * t +
                                 3.0 * std::sin(0.9 * t);
  auto rev = y;
  for (int t = 0; t < 19; ++t) rev[static_cast<size_t>(t)] = y[static_cast<size_t>(18 - t)];

  const auto f = fit_quadratic(y);
  const auto r = fit_quadratic(rev);
  CHECK(r.a0 == doctest::Approx(f.a0 + 18.0 * f.a1 + 324.0 * f.a2).epsilon(1e-9));
  CHECK(r.a1 == doctest::Approx(-f.a1 - 36.0 * f.a2).epsilon(1e-9));
  CHECK(r.a2 == doctest::Approx(f.a2).epsilon(1e-9));
  CHECK(r.rmse == doctest::Approx(f.rmse).epsilon(1e-9));
}

TEST_CASE("the quadratic fit never loses to the constant fit") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 2000.0 + 90.0 * std::sin(1.7 * t) +
                                 30.0 * std::cos(0.4 * t * t);
  const auto c = fit_quadratic(y);

  const double mean = [&] {
    double s = 0.0;
    for (double v : y) s += v;
    return s / 19.0;
  }();
  double ssr_const = 0.0;
  for (double v : y) ssr_const += (v - mean) * (v - mean);
  CHECK(ssr(y, c) <= ssr_const + 1e-9);
}

TEST_CASE("perturbing an optimal coefficient increases the SSR") {
  std::array<double, 19> y{};
  for (int t = 0; t < 19; ++t)
    y[static_cast<size_t>(t)] = 800.0 + 25.0 * std::sin(0.6 * t);
  const auto c = fit_quadratic(y);
  const double base = ssr(y, c);

  for (int which = 0; which < 3; ++which) {
    for (double d : {-1e-3, 1e-3}) {
      PolyCoeffs p = c;
      if (which == 0) p.a0 += d;
      if (which == 1) p.a1 += d;
      if (which == 2) p.a2 += d;
      CHECK(ssr(y, p) > base);
    }
  }
}
