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

#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, where the target supports it, an AVX2 (x86-64) or
// NEON (aarch64) variant picked once at runtime. Variants are bitwise
// equivalent to the scalar reference: the reductions use the same 4-lane
// accumulation order everywhere and no variant fuses multiply-adds.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ridepool::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

/// ISA of the kernel table returned by `active()`. Honors the
/// RIDEPOOL_FORCE_SCALAR environment variable.
Isa active_isa();

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

struct KernelTable {
  Isa isa;
  // dst[j] = min(dst[j], via + src[j])
  void (*minplus_relax)(double* dst, const double* src, double via, std::size_t n);
  // sum_j x[j] * y[j]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[j] += a * x[j]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // max_j |x[j]|
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& active();

/// Throws std::invalid_argument if `isa` is not supported on this machine.
const KernelTable& table_for(Isa isa);

// Span conveniences over the active table.
void minplus_relax(std::span<double> dst, std::span<const double> src, double via);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
double max_abs(std::span<const double> x);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
#if defined(__aarch64__)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace ridepool::simd
