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

#include <random>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "ridepool/error.hpp"
#include "ridepool/graph.hpp"

using namespace ridepool;

namespace {

RoadGraph line4() {
  return build_graph(4, {{1, 2, 1}, {2, 1, 1}, {2, 3, 1}, {3, 2, 1}, {3, 4, 1}, {4, 3, 1}});
}

double path_time(const RoadGraph& g, const std::vector<ArcIndex>& path) {
  double t = 0.0;
  for (ArcIndex p : path) t += g.arc(p).travel_time;
  return t;
}

}  // namespace

TEST_CASE("line graph times and paths") {
  const RoadGraph g = line4();
  const TravelTimeTable tbl = all_pairs_shortest_times(g);
  CHECK(tbl.time(1, 4) == 3.0);
  CHECK(tbl.time(4, 1) == 3.0);
  CHECK(tbl.time(2, 2) == 0.0);
  CHECK(tbl.next_hop(1, 4) == 2);
  CHECK(tbl.next_hop(3, 3) == 0);
  const auto path = shortest_path_arcs(g, tbl, 1, 4);
  REQUIRE(path);
  REQUIRE(path->size() == 3);
  CHECK(g.arc((*path)[0]).tail == 1);
  CHECK(g.arc((*path)[2]).head == 4);
  CHECK(shortest_path_arcs(g, tbl, 3, 3)->empty());
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(build_graph(2, {{1, 1, 1.0}}), ValidationError);
  CHECK_THROWS_AS(build_graph(2, {{1, 2, 1.0}, {1, 2, 2.0}}), ValidationError);
  CHECK_THROWS_AS(build_graph(2, {{1, 3, 1.0}}), ValidationError);
  CHECK_THROWS_AS(build_graph(2, {{0, 2, 1.0}}), ValidationError);
  CHECK_THROWS_AS(build_graph(2, {{1, 2, -1.0}}), ValidationError);
  CHECK_THROWS_AS(build_graph(2, {{1, 2, kUnreachable}}), ValidationError);
}

TEST_CASE("unreachable pairs") {
  const RoadGraph g = build_graph(2, {{1, 2, 4.0}});
  const TravelTimeTable tbl = all_pairs_shortest_times(g);
  CHECK(tbl.reachable(1, 2));
  CHECK_FALSE(tbl.reachable(2, 1));
  CHECK(tbl.next_hop(2, 1) == 0);
  CHECK_FALSE(shortest_path_arcs(g, tbl, 2, 1).has_value());
  CHECK_THROWS_AS(shortest_path_arcs(g, tbl, 1, 3), ValidationError);
}

TEST_CASE("ties prefer fewer arcs, then the smaller next hop") {
  const RoadGraph diamond = build_graph(4, {{1, 3, 1}, {1, 2, 1}, {3, 4, 1}, {2, 4, 1}});
  CHECK(all_pairs_shortest_times(diamond).next_hop(1, 4) == 2);

  const RoadGraph shortcut = build_graph(4, {{1, 2, 1}, {2, 4, 1}, {1, 4, 2}});
  const TravelTimeTable tbl = all_pairs_shortest_times(shortcut);
  CHECK(tbl.next_hop(1, 4) == 4);
  CHECK(shortest_path_arcs(shortcut, tbl, 1, 4)->size() == 1);
}

TEST_CASE("zero travel times still give finite simple paths") {
  const RoadGraph g = build_graph(4, {{1, 2, 0}, {2, 1, 0}, {2, 3, 0}, {3, 2, 0}, {3, 4, 2}, {1, 3, 0}});
  const TravelTimeTable tbl = all_pairs_shortest_times(g);
  const auto path = shortest_path_arcs(g, tbl, 2, 4);
  REQUIRE(path);
  CHECK(path->size() == 2);
  CHECK(path_time(g, *path) == 2.0);
}

TEST_CASE("all-pairs times agree with Bellman-Ford on random graphs") {
  oracle::Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + k % 9;
    const RoadGraph g = oracle::random_graph(rng, n, 0, 20, 0.25);
    const TravelTimeTable tbl = all_pairs_shortest_times(g);
    const oracle::Distances ref = oracle::bellman_ford_all_pairs(g);
    for (VertexId i = 1; i <= n; ++i) {
      for (VertexId j = 1; j <= n; ++j) {
        REQUIRE(tbl.time(i, j) == ref(i, j));
        const auto path = shortest_path_arcs(g, tbl, i, j);
        REQUIRE(path);
        CHECK(path_time(g, *path) == tbl.time(i, j));
      }
    }
    CHECK(all_pairs_shortest_times(g) == tbl);
  }
}

TEST_CASE("adjacency and divergence") {
  const RoadGraph g = line4();
  CHECK(g.out_arcs(2).size() == 2);
  CHECK(g.in_arcs(4).size() == 1);
  CHECK(g.find_arc(2, 3).has_value());
  CHECK_FALSE(g.find_arc(1, 3).has_value());
  std::vector<double> flow(g.arc_count(), 0.0);
  flow[*g.find_arc(1, 2)] = 2.0;
  flow[*g.find_arc(2, 3)] = 2.0;
  CHECK(g.divergence(flow) == std::vector<double>{2.0, 0.0, -2.0, 0.0});
}
