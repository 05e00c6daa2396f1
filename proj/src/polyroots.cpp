// polyroots.cpp
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

#include "sonolab/polyroots.hpp"

#include <cmath>
#include <cstddef>

#include "sonolab/errors.hpp"

namespace sonolab {

using cd = std::complex<double>;

std::vector<cd> poly_roots(const std::vector<double>& coeffs, double tol,
                           int max_iter) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2)
    throw Error(Errc::numerical_failure, "polynomial has no roots");
  for (double v : c)
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_input, "non-finite polynomial coefficient");

  std::vector<cd> roots;
  // z = 0 roots come off by dropping trailing-constant zeros.
  size_t lead = 0;
  while (lead + 1 < c.size() && c[lead] == 0.0) ++lead;
  for (size_t i = 0; i < lead; ++i) roots.emplace_back(0.0, 0.0);
  c.erase(c.begin(), c.begin() + static_cast<long>(lead));

  const size_t n = c.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.emplace_back(-c[0] / c[1], 0.0);
    return roots;
  }

  // Cauchy-style radius bound for the initial ring of guesses.
  double maxc = 0.0;
  for (size_t i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(c[i]));
  const double radius = 1.0 + maxc / std::abs(c[n]);
  std::vector<cd> z(n);
  for (size_t i = 0; i < n; ++i) {
    // Irrational angle offset keeps guesses off axes and symmetries.
    const double th =
        2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) + 0.4;
    z[i] = 0.5 * radius * cd(std::cos(th), std::sin(th));
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      // Horner for p and p' at z[i].
      cd p(c[n], 0.0), dp(0.0, 0.0);
      for (size_t k = n; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      cd sum(0.0, 0.0);
      for (size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cd denom = dp - p * sum;
      cd delta;
      if (std::abs(denom) > 0.0)
        delta = p / denom;
      else
        delta = cd(tol, tol);  // nudge a stalled point off the singularity
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < tol) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
  }
  throw Error(Errc::root_finding_diverged,
              "no convergence after " + std::to_string(max_iter) + " sweeps");
}

}  // namespace sonolab
