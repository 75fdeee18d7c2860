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
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ridepool/simd/kernels.hpp"

using namespace ridepool::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, bool with_inf) {
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  if (with_inf) {
    for (std::size_t i = 0; i < n; i += 3) v[i] = std::numeric_limits<double>::infinity();
  }
  return v;
}

}  // namespace

TEST_CASE("scalar table is always available and first") {
  const auto isas = available_isas();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == Isa::kScalar);
  CHECK(table_for(Isa::kScalar).isa == Isa::kScalar);
}

TEST_CASE("every available kernel set matches the scalar reference bit for bit") {
  const KernelTable& ref = table_for(Isa::kScalar);
  std::mt19937_64 rng(7);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const KernelTable& k = table_for(isa);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 101u, 1000u}) {
      CAPTURE(n);
      const auto x = random_vector(rng, n, false);
      const auto y = random_vector(rng, n, false);
      CHECK(same_bits(k.dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n)));
      CHECK(same_bits(k.max_abs(x.data(), n), ref.max_abs(x.data(), n)));

      auto ya = y, yb = y;
      k.axpy(0.37, x.data(), ya.data(), n);
      ref.axpy(0.37, x.data(), yb.data(), n);
      CHECK(std::memcmp(ya.data(), yb.data(), n * sizeof(double)) == 0);

      const auto src = random_vector(rng, n, true);
      auto da = random_vector(rng, n, true);
      auto db = da;
      k.minplus_relax(da.data(), src.data(), 3.5, n);
      ref.minplus_relax(db.data(), src.data(), 3.5, n);
      CHECK(std::memcmp(da.data(), db.data(), n * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("scalar kernels compute what they claim") {
  const std::vector<double> x = {1.0, -2.0, 3.0, -4.0, 5.0};
  const std::vector<double> y = {2.0, 2.0, 2.0, 2.0, 2.0};
  CHECK(dot(x, y) == doctest::Approx(6.0));
  CHECK(max_abs(x) == 5.0);
  std::vector<double> z = y;
  axpy(2.0, x, z);
  CHECK(z == std::vector<double>{4.0, -2.0, 8.0, -6.0, 12.0});
  std::vector<double> dst = {10.0, 0.0, std::numeric_limits<double>::infinity(), 4.0, 7.0};
  minplus_relax(dst, x, 1.0);
  CHECK(dst == std::vector<double>{2.0, -1.0, 4.0, -3.0, 6.0});
}

TEST_CASE("unavailable instruction sets are rejected") {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    bool listed = false;
    for (Isa a : available_isas()) listed = listed || a == isa;
    if (!listed) CHECK_THROWS_AS(table_for(isa), std::invalid_argument);
  }
}
