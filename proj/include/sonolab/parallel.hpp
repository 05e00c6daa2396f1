// sonolab/parallel.hpp
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

#ifndef SONOLAB_PARALLEL_HPP
#define SONOLAB_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sonolab {

/// Execution policy for the data-parallel kernels. Both paths produce
/// bit-identical results: parallel loops only fill independent slots and all
/// floating-point accumulation happens in a fixed serial order afterwards.
/// The serial path is the reference implementation the tests compare against.
enum class Exec { serial, parallel };

inline int num_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sonolab

#endif  // SONOLAB_PARALLEL_HPP
