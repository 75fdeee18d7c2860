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

// Directed road network and all-pairs shortest travel times.
//
// Vertex ids are 1-based throughout the public API. Arc indices are
// 0-based positions in the arc list the graph was built from; that order is
// the column order of the incidence matrix B, where B(i, p) = +1 if arc p
// leaves vertex i and -1 if it enters it.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace ridepool {

using VertexId = std::int32_t;
using ArcIndex = std::size_t;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  double travel_time = 0.0;  // minutes
};

class RoadGraph {
 public:
  /// Validates and stores the arcs in input order. Throws ValidationError on
  /// self-loops, duplicate (tail, head) pairs, out-of-range ids, or
  /// negative/non-finite travel times.
  static RoadGraph build(int vertex_count, std::vector<Arc> arcs);

  int vertex_count() const { return vertex_count_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(ArcIndex p) const { return arcs_[p]; }

  /// Arcs leaving `v`, ordered by head id.
  std::span<const ArcIndex> out_arcs(VertexId v) const;
  /// Arcs entering `v`, ordered by tail id.
  std::span<const ArcIndex> in_arcs(VertexId v) const;

  std::optional<ArcIndex> find_arc(VertexId tail, VertexId head) const;

  /// The travel-time vector t in arc order.
  const std::vector<double>& travel_times() const { return times_; }

  /// B * x for an arc-flow vector; entry v-1 is outflow minus inflow at v.
  std::vector<double> divergence(std::span<const double> arc_flow) const;

 private:
  RoadGraph() = default;

  int vertex_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<double> times_;
  // CSR adjacency, indexed by vertex id - 1.
  std::vector<std::size_t> out_offsets_;
  std::vector<ArcIndex> out_list_;
  std::vector<std::size_t> in_offsets_;
  std::vector<ArcIndex> in_list_;
};

RoadGraph build_graph(int vertex_count, std::vector<Arc> arcs);

/// Shortest travel times between all vertex pairs plus a next-hop matrix.
///
/// Among equal-time paths the table encodes the one with the fewest arcs,
/// and among those the one whose next hop has the smallest vertex id,
/// applied recursively at every vertex along the path.
class TravelTimeTable {
 public:
  TravelTimeTable(int vertex_count, std::vector<double> times, std::vector<VertexId> next_hop);

  int vertex_count() const { return n_; }
  double time(VertexId from, VertexId to) const { return times_[index(from, to)]; }
  bool reachable(VertexId from, VertexId to) const { return time(from, to) != kUnreachable; }
  /// 0 when `from == to` or `to` is unreachable.
  VertexId next_hop(VertexId from, VertexId to) const { return next_[index(from, to)]; }

  /// Row of times from `from`, indexed by destination id - 1.
  std::span<const double> row(VertexId from) const {
    return std::span<const double>(times_).subspan(static_cast<std::size_t>(from - 1) * n_, n_);
  }

  bool operator==(const TravelTimeTable&) const = default;

 private:
  std::size_t index(VertexId from, VertexId to) const {
    return static_cast<std::size_t>(from - 1) * n_ + static_cast<std::size_t>(to - 1);
  }
  int n_;
  std::vector<double> times_;
  std::vector<VertexId> next_;
};

TravelTimeTable all_pairs_shortest_times(const RoadGraph& g);

/// Arc indices of the tabulated shortest path, origin first. Empty when
/// origin == dest; nullopt when dest is unreachable.
std::optional<std::vector<ArcIndex>> shortest_path_arcs(const RoadGraph& g,
                                                        const TravelTimeTable& tbl,
                                                        VertexId origin, VertexId dest);

}  // namespace ridepool
