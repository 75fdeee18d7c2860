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

#include "ridepool/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "ridepool/error.hpp"
#include "ridepool/simd/kernels.hpp"

namespace ridepool {
namespace {

std::string arc_name(const Arc& a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

// Relative slack used to decide whether an arc lies on a shortest path.
// Covers reassociation differences between the relaxation order and the
// per-arc recomputation.
bool is_tight(double arc_plus_rest, double best) {
  return std::fabs(arc_plus_rest - best) <= 1e-9 * std::max(1.0, std::fabs(best));
}

}  // namespace

RoadGraph RoadGraph::build(int vertex_count, std::vector<Arc> arcs) {
  if (vertex_count <= 0) throw ValidationError("vertex_count must be positive");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Arc& a : arcs) {
    if (a.tail < 1 || a.tail > vertex_count || a.head < 1 || a.head > vertex_count) {
      throw ValidationError("arc " + arc_name(a) + " has a vertex id outside 1.." +
                            std::to_string(vertex_count));
    }
    if (a.tail == a.head) throw ValidationError("self-loop arc " + arc_name(a));
    if (!std::isfinite(a.travel_time) || a.travel_time < 0.0) {
      throw ValidationError("arc " + arc_name(a) + " has invalid travel time " +
                            std::to_string(a.travel_time));
    }
    if (!seen.emplace(a.tail, a.head).second) {
      throw ValidationError("duplicate arc " + arc_name(a));
    }
  }

  RoadGraph g;
  g.vertex_count_ = vertex_count;
  g.arcs_ = std::move(arcs);
  g.times_.reserve(g.arcs_.size());
  for (const Arc& a : g.arcs_) g.times_.push_back(a.travel_time);

  const auto n = static_cast<std::size_t>(vertex_count);
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Arc& a : g.arcs_) {
    ++g.out_offsets_[a.tail];
    ++g.in_offsets_[a.head];
  }
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.out_list_.resize(g.arcs_.size());
  g.in_list_.resize(g.arcs_.size());
  std::vector<std::size_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (ArcIndex p = 0; p < g.arcs_.size(); ++p) {
    g.out_list_[out_fill[g.arcs_[p].tail - 1]++] = p;
    g.in_list_[in_fill[g.arcs_[p].head - 1]++] = p;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.out_list_.begin() + g.out_offsets_[v], g.out_list_.begin() + g.out_offsets_[v + 1],
              [&](ArcIndex a, ArcIndex b) { return g.arcs_[a].head < g.arcs_[b].head; });
    std::sort(g.in_list_.begin() + g.in_offsets_[v], g.in_list_.begin() + g.in_offsets_[v + 1],
              [&](ArcIndex a, ArcIndex b) { return g.arcs_[a].tail < g.arcs_[b].tail; });
  }
  return g;
}

RoadGraph build_graph(int vertex_count, std::vector<Arc> arcs) {
  return RoadGraph::build(vertex_count, std::move(arcs));
}

std::span<const ArcIndex> RoadGraph::out_arcs(VertexId v) const {
  const auto i = static_cast<std::size_t>(v - 1);
  return std::span<const ArcIndex>(out_list_).subspan(out_offsets_[i],
                                                      out_offsets_[i + 1] - out_offsets_[i]);
}

std::span<const ArcIndex> RoadGraph::in_arcs(VertexId v) const {
  const auto i = static_cast<std::size_t>(v - 1);
  return std::span<const ArcIndex>(in_list_).subspan(in_offsets_[i],
                                                     in_offsets_[i + 1] - in_offsets_[i]);
}

std::optional<ArcIndex> RoadGraph::find_arc(VertexId tail, VertexId head) const {
  if (tail < 1 || tail > vertex_count_) return std::nullopt;
  const auto out = out_arcs(tail);
  const auto it = std::lower_bound(out.begin(), out.end(), head,
                                   [&](ArcIndex p, VertexId h) { return arcs_[p].head < h; });
  if (it == out.end() || arcs_[*it].head != head) return std::nullopt;
  return *it;
}

std::vector<double> RoadGraph::divergence(std::span<const double> arc_flow) const {
  if (arc_flow.size() != arcs_.size()) throw ValidationError("arc-flow vector has wrong length");
  std::vector<double> div(static_cast<std::size_t>(vertex_count_), 0.0);
  for (ArcIndex p = 0; p < arcs_.size(); ++p) {
    div[arcs_[p].tail - 1] += arc_flow[p];
    div[arcs_[p].head - 1] -= arc_flow[p];
  }
  return div;
}

TravelTimeTable::TravelTimeTable(int vertex_count, std::vector<double> times,
                                 std::vector<VertexId> next_hop)
    : n_(vertex_count), times_(std::move(times)), next_(std::move(next_hop)) {
  const auto cells = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  if (times_.size() != cells || next_.size() != cells) {
    throw ValidationError("travel-time table dimensions do not match vertex count");
  }
}

TravelTimeTable all_pairs_shortest_times(const RoadGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<double> d(n * n, kUnreachable);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const Arc& a : g.arcs()) {
    double& cell = d[static_cast<std::size_t>(a.tail - 1) * n + (a.head - 1)];
    cell = std::min(cell, a.travel_time);
  }

  // Floyd-Warshall; the row update is the min-plus kernel.
  const auto& kernels = simd::active();
  for (std::size_t k = 0; k < n; ++k) {
    const double* row_k = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kUnreachable || i == k) continue;
      kernels.minplus_relax(d.data() + i * n, row_k, dik, n);
    }
  }

  // Next hops per destination: restrict to arcs on some shortest path,
  // then to those that start a fewest-arc shortest path, then pick the
  // smallest head id.
  std::vector<VertexId> next(n * n, 0);
  std::vector<int> hops(n);
  std::deque<VertexId> queue;
  for (VertexId dest = 1; dest <= g.vertex_count(); ++dest) {
    const std::size_t col = static_cast<std::size_t>(dest - 1);
    std::fill(hops.begin(), hops.end(), -1);
    hops[col] = 0;
    queue.assign(1, dest);
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      const double du = d[static_cast<std::size_t>(u - 1) * n + col];
      for (ArcIndex p : g.in_arcs(u)) {
        const Arc& a = g.arc(p);
        const std::size_t i = static_cast<std::size_t>(a.tail - 1);
        if (hops[i] >= 0) continue;
        const double di = d[i * n + col];
        if (di == kUnreachable || !is_tight(a.travel_time + du, di)) continue;
        hops[i] = hops[static_cast<std::size_t>(u - 1)] + 1;
        queue.push_back(a.tail);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || d[i * n + col] == kUnreachable) continue;
      if (hops[i] < 0) {
        throw std::logic_error("shortest-path DAG is missing a reachable vertex");
      }
      for (ArcIndex p : g.out_arcs(static_cast<VertexId>(i + 1))) {
        const Arc& a = g.arc(p);
        const std::size_t v = static_cast<std::size_t>(a.head - 1);
        if (hops[v] == hops[i] - 1 && is_tight(a.travel_time + d[v * n + col], d[i * n + col])) {
          next[i * n + col] = a.head;
          break;
        }
      }
    }
  }
  return TravelTimeTable(g.vertex_count(), std::move(d), std::move(next));
}

std::optional<std::vector<ArcIndex>> shortest_path_arcs(const RoadGraph& g,
                                                        const TravelTimeTable& tbl,
                                                        VertexId origin, VertexId dest) {
  if (origin < 1 || origin > g.vertex_count() || dest < 1 || dest > g.vertex_count()) {
    throw ValidationError("vertex id out of range in path query");
  }
  if (!tbl.reachable(origin, dest)) return std::nullopt;
  std::vector<ArcIndex> path;
  VertexId at = origin;
  while (at != dest) {
    const VertexId nxt = tbl.next_hop(at, dest);
    const auto arc = g.find_arc(at, nxt);
    if (!arc) throw std::logic_error("next-hop table refers to a missing arc");
    path.push_back(*arc);
    at = nxt;
  }
  return path;
}

}  // namespace ridepool
