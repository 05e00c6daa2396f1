// contour.cpp
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

#include "sonolab/contour.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "sonolab/errors.hpp"

namespace sonolab {

PolyCoeffs fit_quadratic(const std::array<double, 19>& values) {
  for (double v : values)
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_input, "non-finite contour value");

  Eigen::MatrixXd X(19, 3);
  Eigen::VectorXd y(19);
  for (int k = 0; k < 19; ++k) {
    const double t = static_cast<double>(k);
    X(k, 0) = 1.0;
    X(k, 1) = t;
    X(k, 2) = t * t;
    y(k) = values[static_cast<size_t>(k)];
  }
  const Eigen::VectorXd beta = X.householderQr().solve(y);
  const Eigen::VectorXd r = y - X * beta;

  PolyCoeffs out;
  out.a0 = beta(0);
  out.a1 = beta(1);
  out.a2 = beta(2);
  out.rmse = std::sqrt(r.squaredNorm() / 19.0);
  return out;
}

double eval_quadratic(const PolyCoeffs& c, double t) {
  return c.a0 + (c.a1 + c.a2 * t) * t;
}

}  // namespace sonolab
