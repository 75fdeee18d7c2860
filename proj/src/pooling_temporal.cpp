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

#include "ridepool/pooling_temporal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ridepool/error.hpp"
#include "ridepool/parallel.hpp"

namespace ridepool {
namespace {

constexpr std::uint64_t kChunk = 1u << 16;

void check_rate(double a, const char* name) {
  if (!std::isfinite(a) || a < 0.0) {
    throw ValidationError(std::string(name) + " must be a finite nonnegative rate");
  }
}

}  // namespace

WaitWindow WaitWindow::from_hours(double hours) {
  if (!std::isfinite(hours) || hours <= 0.0) {
    throw ValidationError("waiting window must be positive and finite");
  }
  return WaitWindow(hours);
}

WaitWindow WaitWindow::from_minutes(double minutes) { return from_hours(minutes / 60.0); }

double pair_probability(double alpha_m, double alpha_n, WaitWindow w) {
  check_rate(alpha_m, "alpha_m");
  check_rate(alpha_n, "alpha_n");
  if (alpha_m == 0.0 || alpha_n == 0.0) return 0.0;
  const double t = w.hours();
  const double p = 1.0 - (alpha_m * std::exp(-alpha_n * t) + alpha_n * std::exp(-alpha_m * t)) /
                             (alpha_m + alpha_n);
  return p < 0.0 ? 0.0 : p;
}

MonteCarloEstimate pair_probability_mc(double alpha_m, double alpha_n, WaitWindow w,
                                       std::uint64_t samples, std::uint64_t seed,
                                       unsigned threads) {
  check_rate(alpha_m, "alpha_m");
  check_rate(alpha_n, "alpha_n");
  if (alpha_m == 0.0 || alpha_n == 0.0) throw ValidationError("Monte Carlo needs positive rates");
  if (samples == 0) throw ValidationError("Monte Carlo needs at least one sample");

  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  const double t = w.hours();
  detail::parallel_for(
      chunks,
      [&](std::size_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        std::exponential_distribution<double> arrival_m(alpha_m);
        std::exponential_distribution<double> arrival_n(alpha_n);
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(samples, begin + kChunk);
        std::uint64_t h = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
          const double tm = arrival_m(rng);
          const double tn = arrival_n(rng);
          if (std::fabs(tm - tn) <= t) ++h;
        }
        hits[c] = h;
      },
      threads);

  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  MonteCarloEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(total) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

}  // namespace ridepool
