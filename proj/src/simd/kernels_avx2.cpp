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

// Compiled with -mavx2. Only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstddef>

#include "ridepool/simd/kernels.hpp"

namespace ridepool::simd {
namespace {

void minplus_relax_avx2(double* dst, const double* src, double via, std::size_t n) {
  const __m256d v = _mm256_set1_pd(via);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cand = _mm256_add_pd(v, _mm256_loadu_pd(src + j));
    const __m256d cur = _mm256_loadu_pd(dst + j);
    // min_pd(a, b) is a < b ? a : b, same as the scalar select.
    _mm256_storeu_pd(dst + j, _mm256_min_pd(cand, cur));
  }
  for (; j < n; ++j) {
    const double cand = via + src[j];
    dst[j] = cand < dst[j] ? cand : dst[j];
  }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j));
    acc = _mm256_add_pd(acc, p);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; j < n; ++j) {
    const double p = x[j] * y[j];
    sum = sum + p;
  }
  return sum;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(y + j, _mm256_add_pd(_mm256_loadu_pd(y + j), p));
  }
  for (; j < n; ++j) {
    const double p = a * x[j];
    y[j] = y[j] + p;
  }
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + j));
    m = _mm256_max_pd(v, m);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double out = 0.0;
  for (double v : lane) out = v > out ? v : out;
  for (; j < n; ++j) {
    const double v = x[j] < 0 ? -x[j] : x[j];
    out = v > out ? v : out;
  }
  return out;
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table = {Isa::kAvx2, minplus_relax_avx2, dot_avx2, axpy_avx2, max_abs_avx2};
}  // namespace detail

}  // namespace ridepool::simd
