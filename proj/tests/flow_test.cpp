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

#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "ridepool/error.hpp"
#include "ridepool/flow.hpp"

using namespace ridepool;

namespace {

RoadGraph line4() {
  return build_graph(4, {{1, 2, 1}, {2, 1, 1}, {2, 3, 1}, {3, 2, 1}, {3, 4, 1}, {4, 3, 1}});
}

}  // namespace

TEST_CASE("line fixture without pooling") {
  const RoadGraph g = line4();
  const TravelTimeTable tbl = all_pairs_shortest_times(g);
  const DemandMatrix d = demand_from_requests(RequestSet({{1, 3, 2.0}, {2, 4, 2.0}}), 4);
  const FlowSolution sol = solve_flow(g, tbl, d);
  CHECK(sol.objective_J_tilde == 8.0);
  CHECK(sol.objective_J == 16.0);
  CHECK(sol.rebalancing_share == 0.5);
  const auto total = sol.total_active_flow();
  CHECK(total[*g.find_arc(2, 3)] == 4.0);
  CHECK(total[*g.find_arc(2, 1)] == 0.0);
  CHECK(sol.active_column(1)[*g.find_arc(1, 2)] == 2.0);
  CHECK(sol.active_column(2)[*g.find_arc(1, 2)] == 0.0);
  CHECK(conservation_residual(g, sol) == 0.0);
  CHECK(demand_residual(g, sol, d) == 0.0);
}

TEST_CASE("balanced demand needs no rebalancing") {
  const RoadGraph g = line4();
  const DemandMatrix d = demand_from_requests(RequestSet({{1, 4, 1.5}, {4, 1, 1.5}}), 4);
  const FlowSolution sol = solve_flow(g, all_pairs_shortest_times(g), d);
  CHECK(sol.objective_J_tilde == 9.0);
  CHECK(sol.objective_J == 9.0);
  CHECK(sol.rebalancing_share == 0.0);
}

TEST_CASE("empty demand") {
  const RoadGraph g = line4();
  const FlowSolution sol = solve_flow(g, all_pairs_shortest_times(g), DemandMatrix(4));
  CHECK(sol.objective_J == 0.0);
  CHECK(sol.rebalancing_share == 0.0);
}

TEST_CASE("objectives scale linearly with demand") {
  oracle::Rng rng(3);
  const RoadGraph g = oracle::random_graph(rng, 7, 1, 9, 0.3);
  const TravelTimeTable tbl = all_pairs_shortest_times(g);
  DemandMatrix d(7), d3(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (VertexId o = 1; o <= 7; ++o) {
    for (VertexId t = 1; t <= 7; ++t) {
      if (o == t) continue;
      const double r = u(rng);
      d.add_trip(o, t, r);
      d3.add_trip(o, t, 3.0 * r);
    }
  }
  const FlowSolution a = solve_flow(g, tbl, d);
  const FlowSolution b = solve_flow(g, tbl, d3);
  CHECK(b.objective_J == doctest::Approx(3.0 * a.objective_J));
  CHECK(b.objective_J_tilde == doctest::Approx(3.0 * a.objective_J_tilde));
  CHECK(conservation_residual(g, b) < 1e-9);
  CHECK(demand_residual(g, b, d3) < 1e-9);
}

TEST_CASE("rebalancing matches the brute-force transport optimum") {
  oracle::Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const RoadGraph g = oracle::random_graph(rng, 2 + k % 4, 1, 9, 0.4);
    const int n = g.vertex_count();
    std::vector<double> required(static_cast<std::size_t>(n), 0.0);
    std::uniform_int_distribution<int> units(-3, 3);
    for (int v = 0; v + 1 < n; ++v) {
      required[static_cast<std::size_t>(v)] = units(rng);
      required.back() -= required[static_cast<std::size_t>(v)];
    }
    const std::vector<double> x = solve_rebalancing(g, required);
    const double cost = std::inner_product(x.begin(), x.end(), g.travel_times().begin(), 0.0);
    CHECK(cost == oracle::brute_force_transport_cost(oracle::bellman_ford_all_pairs(g), required));
    const auto div = g.divergence(x);
    for (int v = 0; v < n; ++v) CHECK(div[static_cast<std::size_t>(v)] == required[static_cast<std::size_t>(v)]);
  }
}

TEST_CASE("unreachable demand and infeasible rebalancing are reported") {
  const RoadGraph oneway = build_graph(3, {{1, 2, 1}, {2, 3, 1}});
  const TravelTimeTable tbl = all_pairs_shortest_times(oneway);
  CHECK_THROWS_AS(solve_flow(oneway, tbl, demand_from_requests(RequestSet({{3, 1, 1.0}}), 3)), UnreachableError);
  CHECK_THROWS_AS(solve_flow(oneway, tbl, demand_from_requests(RequestSet({{1, 3, 1.0}}), 3)), InfeasibleError);
}
