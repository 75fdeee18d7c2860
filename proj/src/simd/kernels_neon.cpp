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

#include <arm_neon.h>

#include <cstddef>

#include "ridepool/simd/kernels.hpp"

namespace ridepool::simd {
namespace {

void minplus_relax_neon(double* dst, const double* src, double via, std::size_t n) {
  const float64x2_t v = vdupq_n_f64(via);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t cand = vaddq_f64(v, vld1q_f64(src + j));
    const float64x2_t cur = vld1q_f64(dst + j);
    vst1q_f64(dst + j, vbslq_f64(vcltq_f64(cand, cur), cand, cur));
  }
  for (; j < n; ++j) {
    const double cand = via + src[j];
    dst[j] = cand < dst[j] ? cand : dst[j];
  }
}

// Two 2-lane accumulators reproduce the 4-lane order of the scalar kernel.
double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + j), vld1q_f64(y + j)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + j + 2), vld1q_f64(y + j + 2)));
  }
  const double s01 = vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1);
  const double s23 = vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1);
  double sum = s01 + s23;
  for (; j < n; ++j) {
    const double p = x[j] * y[j];
    sum = sum + p;
  }
  return sum;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    vst1q_f64(y + j, vaddq_f64(vld1q_f64(y + j), vmulq_f64(va, vld1q_f64(x + j))));
  }
  for (; j < n; ++j) {
    const double p = a * x[j];
    y[j] = y[j] + p;
  }
}

double max_abs_neon(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + j)));
  double out = vgetq_lane_f64(m, 0) > vgetq_lane_f64(m, 1) ? vgetq_lane_f64(m, 0)
                                                           : vgetq_lane_f64(m, 1);
  for (; j < n; ++j) {
    const double v = x[j] < 0 ? -x[j] : x[j];
    out = v > out ? v : out;
  }
  return out;
}

}  // namespace

namespace detail {
const KernelTable kNeonTable = {Isa::kNeon, minplus_relax_neon, dot_neon, axpy_neon, max_abs_neon};
}  // namespace detail

}  // namespace ridepool::simd
