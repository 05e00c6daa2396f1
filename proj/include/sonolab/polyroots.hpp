// sonolab/polyroots.hpp
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

#ifndef SONOLAB_POLYROOTS_HPP
#define SONOLAB_POLYROOTS_HPP

#include <complex>
#include <vector>

namespace sonolab {

/// All complex roots of c[0] + c[1] z + ... + c[n] z^n via simultaneous
/// Aberth iteration. Leading zero coefficients are trimmed; exact zero
/// roots are deflated first. Converges when every correction falls below
/// tol; throws RootFindingDiverged after max_iter sweeps without that.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs,
                                             double tol = 1e-12,
                                             int max_iter = 100);

}  // namespace sonolab

#endif  // SONOLAB_POLYROOTS_HPP
