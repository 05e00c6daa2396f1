// sonolab/contour.hpp
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

#ifndef SONOLAB_CONTOUR_HPP
#define SONOLAB_CONTOUR_HPP

#include <array>

namespace sonolab {

/// Quadratic y = a0 + a1 t + a2 t^2 over grid-step units t = 0..18, so a0
/// is the fitted value at the first (5%) grid point.
struct PolyCoeffs {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double rmse = 0.0;
  int formant_index = 0;  // 1..4 when known
};

/// Least-squares fit of the 19 contour values, solved by QR factorization
/// of the Vandermonde design. rmse = sqrt(SSR / 19).
PolyCoeffs fit_quadratic(const std::array<double, 19>& values);

double eval_quadratic(const PolyCoeffs& c, double t);

}  // namespace sonolab

#endif  // SONOLAB_CONTOUR_HPP
