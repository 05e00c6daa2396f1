// sonolab/fft.hpp
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

#ifndef SONOLAB_FFT_HPP
#define SONOLAB_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace sonolab {

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// In-place iterative radix-2 FFT; data.size() must be a power of two.
/// Forward transform, no normalization: X[k] = sum_n x[n] e^{-2*pi*i*n*k/N}.
void fft_inplace(std::vector<std::complex<double>>& data);

/// One-sided power spectrum of a real frame zero-padded to n_fft (a power of
/// two): |X[k]|^2 for k = 0..n_fft/2, no interior-bin doubling.
std::vector<double> power_spectrum(const std::vector<double>& frame,
                                   std::size_t n_fft);

}  // namespace sonolab

#endif  // SONOLAB_FFT_HPP
