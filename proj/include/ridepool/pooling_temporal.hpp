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

// Probability that two independent Poisson request streams each produce an
// arrival within a waiting window of each other:
//
//   P(a, b) = 1 - (a exp(-b T) + b exp(-a T)) / (a + b)
//
// Rates are in requests per hour; the window is stored in hours so a * T
// is dimensionless. Use WaitWindow::from_minutes for user-facing values.

#include <cstdint>

namespace ridepool {

class WaitWindow {
 public:
  /// Throws ValidationError unless 0 < hours < inf.
  static WaitWindow from_hours(double hours);
  static WaitWindow from_minutes(double minutes);

  double hours() const { return hours_; }
  double minutes() const { return hours_ * 60.0; }

 private:
  explicit WaitWindow(double hours) : hours_(hours) {}
  double hours_;
};

/// Closed form above. Returns 0 if either rate is 0. Throws ValidationError
/// on a negative or non-finite rate.
double pair_probability(double alpha_m, double alpha_n, WaitWindow w);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Samples first-arrival times T_m ~ Exp(alpha_m), T_n ~ Exp(alpha_n) and
/// estimates P(|T_m - T_n| <= T). Samples are drawn in fixed-size chunks,
/// each seeded from (seed, chunk index), so the result depends only on the
/// arguments and not on the number of worker threads.
MonteCarloEstimate pair_probability_mc(double alpha_m, double alpha_n, WaitWindow w,
                                       std::uint64_t samples, std::uint64_t seed,
                                       unsigned threads = 0);

}  // namespace ridepool
