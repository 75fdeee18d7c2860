// Copyright 2026 the ridepool authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstddef>

#include "ridepool/simd/kernels.hpp"

namespace ridepool::simd {
namespace {

void minplus_relax_scalar(double* dst, const double* src, double via, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = via + src[j];
    dst[j] = cand < dst[j] ? cand : dst[j];
  }
}

// Lane l accumulates indices l, l+4, l+8, ...; lanes are combined as
// (l0 + l1) + (l2 + l3) before the tail is added in order.
double dot_scalar(const double* x, const double* y, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double p = x[j + l] * y[j + l];
      lane[l] = lane[l] + p;
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; j < n; ++j) {
    const double p = x[j] * y[j];
    sum = sum + p;
  }
  return sum;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double p = a * x[j];
    y[j] = y[j] + p;
  }
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = std::fabs(x[j]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

namespace detail {
const KernelTable kScalarTable = {Isa::kScalar, minplus_relax_scalar, dot_scalar, axpy_scalar,
                                  max_abs_scalar};
}  // namespace detail

}  // namespace ridepool::simd
