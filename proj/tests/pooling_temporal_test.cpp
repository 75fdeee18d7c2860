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
#include <limits>

#include "doctest.h"
#include "ridepool/error.hpp"
#include "ridepool/pooling_temporal.hpp"

using namespace ridepool;

TEST_CASE("wait windows") {
  CHECK(WaitWindow::from_minutes(30.0).hours() == 0.5);
  CHECK(WaitWindow::from_hours(0.25).minutes() == 15.0);
  CHECK_THROWS_AS(WaitWindow::from_hours(0.0), ValidationError);
  CHECK_THROWS_AS(WaitWindow::from_minutes(-1.0), ValidationError);
  CHECK_THROWS_AS(WaitWindow::from_hours(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST_CASE("closed-form pairing probability") {
  const WaitWindow half = WaitWindow::from_hours(0.5);
  CHECK(pair_probability(2.0, 2.0, half) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(pair_probability(2.0, 3.0, half) ==
        doctest::Approx(1.0 - (2.0 * std::exp(-1.5) + 3.0 * std::exp(-1.0)) / 5.0).epsilon(1e-14));
  CHECK(pair_probability(2.0, 3.0, half) == pair_probability(3.0, 2.0, half));
  CHECK(pair_probability(0.0, 3.0, half) == 0.0);
  CHECK(pair_probability(1.0, 1.0, WaitWindow::from_hours(std::log(2.0))) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pair_probability(2.0, 2.0, WaitWindow::from_hours(10.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pair_probability(-1.0, 1.0, half), ValidationError);
  CHECK_THROWS_AS(pair_probability(std::nan(""), 1.0, half), ValidationError);
}

TEST_CASE("probability grows with a common rate and with the window") {
  double last = 0.0;
  for (double a : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double p = pair_probability(a, a, WaitWindow::from_hours(0.2));
    CHECK(p > last);
    CHECK(p < 1.0);
    last = p;
  }
  // Raising one rate alone is not monotone: a very busy stream leaves
  // the other's first arrival to decide.
  CHECK(pair_probability(5.0, 1.0, WaitWindow::from_hours(0.2)) >
        pair_probability(20.0, 1.0, WaitWindow::from_hours(0.2)));
  CHECK(pair_probability(1e9, 1.0, WaitWindow::from_hours(0.2)) ==
        doctest::Approx(1.0 - std::exp(-0.2)));
  CHECK(pair_probability(1.0, 2.0, WaitWindow::from_hours(0.1)) <
        pair_probability(1.0, 2.0, WaitWindow::from_hours(0.3)));
}

TEST_CASE("Monte Carlo estimate") {
  const WaitWindow w = WaitWindow::from_hours(std::log(2.0));
  const MonteCarloEstimate e = pair_probability_mc(1.0, 1.0, w, 1000000, 42);
  CHECK(e.samples == 1000000);
  CHECK(std::fabs(e.estimate - 0.5) <= 3.0 * e.std_error);
  CHECK(e.std_error == doctest::Approx(std::sqrt(e.estimate * (1.0 - e.estimate) / 1e6)));

  const MonteCarloEstimate again = pair_probability_mc(1.0, 1.0, w, 1000000, 42);
  CHECK(again.estimate == e.estimate);
  const MonteCarloEstimate serial = pair_probability_mc(1.0, 1.0, w, 1000000, 42, 1);
  CHECK(serial.estimate == e.estimate);
  CHECK(pair_probability_mc(1.0, 1.0, w, 1000000, 43).estimate != e.estimate);

  const MonteCarloEstimate skew = pair_probability_mc(2.0, 3.0, WaitWindow::from_hours(0.5), 1000000, 9);
  CHECK(std::fabs(skew.estimate - pair_probability(2.0, 3.0, WaitWindow::from_hours(0.5))) <= 3.0 * skew.std_error);

  CHECK_THROWS_AS(pair_probability_mc(0.0, 1.0, w, 10, 1), ValidationError);
  CHECK_THROWS_AS(pair_probability_mc(1.0, 1.0, w, 0, 1), ValidationError);
}
