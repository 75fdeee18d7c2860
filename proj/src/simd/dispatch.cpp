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

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ridepool/simd/kernels.hpp"

namespace ridepool::simd {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_table() {
  const char* force = std::getenv("RIDEPOOL_FORCE_SCALAR");
  if (force != nullptr && std::string(force) != "0") return detail::kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_supports(Isa::kAvx2)) return detail::kAvx2Table;
#endif
#if defined(__aarch64__)
  return detail::kNeonTable;
#endif
  return detail::kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

Isa active_isa() { return active().isa; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("ISA not supported on this machine: " + std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::kScalar:
      return detail::kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2:
      return detail::kAvx2Table;
#endif
#if defined(__aarch64__)
    case Isa::kNeon:
      return detail::kNeonTable;
#endif
    default:
      break;
  }
  throw std::invalid_argument("no kernel table for " + std::string(isa_name(isa)));
}

void minplus_relax(std::span<double> dst, std::span<const double> src, double via) {
  assert(dst.size() == src.size());
  active().minplus_relax(dst.data(), src.data(), via, dst.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

}  // namespace ridepool::simd
