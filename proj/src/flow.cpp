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

#include "ridepool/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "ridepool/error.hpp"
#include "ridepool/parallel.hpp"
#include "ridepool/simd/kernels.hpp"

namespace ridepool {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual network for the rebalancing min-cost flow. Road arcs are
// uncapacitated; the source/sink arcs carry the imbalances.
class ResidualNetwork {
 public:
  struct Edge {
    int to;
    double cap;
    double cost;
    double flow;
    std::size_t rev;
  };

  explicit ResidualNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  std::pair<int, std::size_t> add_edge(int from, int to, double cap, double cost) {
    auto& out = adj_[static_cast<std::size_t>(from)];
    auto& in = adj_[static_cast<std::size_t>(to)];
    out.push_back({to, cap, cost, 0.0, in.size()});
    in.push_back({from, 0.0, -cost, 0.0, out.size() - 1});
    return {from, out.size() - 1};
  }

  const Edge& edge(std::pair<int, std::size_t> id) const {
    return adj_[static_cast<std::size_t>(id.first)][id.second];
  }

  /// Pushes up to `amount` from s to t; returns the amount still unrouted.
  double min_cost_flow(int s, int t, double amount, double eps) {
    const std::size_t n = adj_.size();
    std::vector<double> potential(n, 0.0);
    std::vector<double> dist(n);
    std::vector<int> prev_node(n);
    std::vector<std::size_t> prev_edge(n);
    using Item = std::pair<double, int>;
    while (amount > eps) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[static_cast<std::size_t>(s)] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.emplace(0.0, s);
      while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[static_cast<std::size_t>(u)]) continue;
        const auto& out = adj_[static_cast<std::size_t>(u)];
        for (std::size_t k = 0; k < out.size(); ++k) {
          const Edge& e = out[k];
          if (e.cap - e.flow <= eps) continue;
          const double reduced = e.cost + potential[static_cast<std::size_t>(u)] -
                                 potential[static_cast<std::size_t>(e.to)];
          // Rounding can leave reduced costs a hair below zero.
          const double nd = du + std::max(0.0, reduced);
          if (nd < dist[static_cast<std::size_t>(e.to)]) {
            dist[static_cast<std::size_t>(e.to)] = nd;
            prev_node[static_cast<std::size_t>(e.to)] = u;
            prev_edge[static_cast<std::size_t>(e.to)] = k;
            pq.emplace(nd, e.to);
          }
        }
      }
      if (dist[static_cast<std::size_t>(t)] == kInf) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      double push = amount;
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        const Edge& e = adj_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                            [prev_edge[static_cast<std::size_t>(v)]];
        push = std::min(push, e.cap - e.flow);
      }
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        Edge& e = adj_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                      [prev_edge[static_cast<std::size_t>(v)]];
        e.flow += push;
        adj_[static_cast<std::size_t>(v)][e.rev].flow -= push;
      }
      amount -= push;
    }
    return amount;
  }

 private:
  std::vector<std::vector<Edge>> adj_;
};

}  // namespace

std::vector<double> FlowSolution::total_active_flow() const {
  std::vector<double> total(arc_count, 0.0);
  for (VertexId j = 1; j <= vertex_count; ++j) simd::axpy(1.0, active_column(j), total);
  return total;
}

std::vector<double> solve_rebalancing(const RoadGraph& g, std::span<const double> required) {
  const int n = g.vertex_count();
  if (required.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("rebalancing imbalance vector has wrong length");
  }
  const double scale = std::max(1.0, simd::max_abs(required));
  const double eps = 1e-12 * scale;

  const int source = n;
  const int sink = n + 1;
  ResidualNetwork net(n + 2);
  std::vector<std::pair<int, std::size_t>> road_edges;
  road_edges.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) {
    road_edges.push_back(net.add_edge(a.tail - 1, a.head - 1, kInf, a.travel_time));
  }
  double supply = 0.0;
  double demand = 0.0;
  for (int v = 0; v < n; ++v) {
    const double r = required[static_cast<std::size_t>(v)];
    if (r > eps) {
      net.add_edge(source, v, r, 0.0);
      supply += r;
    } else if (r < -eps) {
      net.add_edge(v, sink, -r, 0.0);
      demand -= r;
    }
  }
  if (std::fabs(supply - demand) > 1e-9 * std::max(1.0, supply)) {
    throw ValidationError("rebalancing imbalances do not sum to zero");
  }
  const double left = net.min_cost_flow(source, sink, std::min(supply, demand), eps);
  if (left > 1e-9 * std::max(1.0, supply)) {
    throw InfeasibleError("rebalancing infeasible: " + std::to_string(left) +
                          " vehicles/hour cannot reach a vertex that needs them");
  }

  std::vector<double> flow(g.arc_count(), 0.0);
  for (std::size_t p = 0; p < road_edges.size(); ++p) {
    const double f = net.edge(road_edges[p]).flow;
    flow[p] = f > eps ? f : 0.0;
  }
  return flow;
}

FlowSolution solve_flow(const RoadGraph& g, const TravelTimeTable& tbl, const DemandMatrix& d) {
  if (d.vertex_count() != g.vertex_count() || tbl.vertex_count() != g.vertex_count()) {
    throw ValidationError("demand matrix, table and graph disagree on vertex count");
  }
  const int n = g.vertex_count();
  FlowSolution sol;
  sol.vertex_count = n;
  sol.arc_count = g.arc_count();
  sol.active_flows.assign(static_cast<std::size_t>(n) * sol.arc_count, 0.0);

  for (VertexId j = 1; j <= n; ++j) {
    for (VertexId i = 1; i <= n; ++i) {
      if (i != j && d.at(i, j) > 0.0 && !tbl.reachable(j, i)) {
        throw UnreachableError(j, i, "no path for demanded pair " + std::to_string(j) + "->" +
                                         std::to_string(i));
      }
    }
  }

  // Columns are independent; each worker writes only its own column.
  detail::parallel_for(
      static_cast<std::size_t>(n),
      [&](std::size_t col) {
        const auto origin = static_cast<VertexId>(col + 1);
        double* x = sol.active_flows.data() + col * sol.arc_count;
        for (VertexId dest = 1; dest <= n; ++dest) {
          const double rate = dest == origin ? 0.0 : d.at(dest, origin);
          if (rate <= 0.0) continue;
          const auto path = shortest_path_arcs(g, tbl, origin, dest);
          for (ArcIndex p : *path) x[p] += rate;
        }
      },
      n >= 64 ? 0u : 1u);

  const std::vector<double> total = sol.total_active_flow();
  std::vector<double> required = g.divergence(total);
  for (double& r : required) r = -r;
  sol.rebalancing_flow = solve_rebalancing(g, required);

  const Objectives obj = evaluate_objective(g, sol);
  sol.objective_J = obj.J;
  sol.objective_J_tilde = obj.J_tilde;
  sol.rebalancing_share = obj.rebalancing_share;
  return sol;
}

Objectives evaluate_objective(const RoadGraph& g, const FlowSolution& sol) {
  const auto& t = g.travel_times();
  const std::vector<double> total = sol.total_active_flow();
  Objectives obj;
  obj.J_tilde = simd::dot(t, total);
  const double rebalancing = sol.rebalancing_flow.empty() ? 0.0 : simd::dot(t, sol.rebalancing_flow);
  obj.J = obj.J_tilde + rebalancing;
  obj.rebalancing_share = obj.J > 0.0 ? rebalancing / obj.J : 0.0;
  return obj;
}

double conservation_residual(const RoadGraph& g, const FlowSolution& sol) {
  std::vector<double> total = sol.total_active_flow();
  if (!sol.rebalancing_flow.empty()) simd::axpy(1.0, sol.rebalancing_flow, total);
  return simd::max_abs(g.divergence(total));
}

double demand_residual(const RoadGraph& g, const FlowSolution& sol, const DemandMatrix& d) {
  double worst = 0.0;
  for (VertexId j = 1; j <= g.vertex_count(); ++j) {
    const std::vector<double> div = g.divergence(sol.active_column(j));
    for (VertexId i = 1; i <= g.vertex_count(); ++i) {
      worst = std::max(worst, std::fabs(div[static_cast<std::size_t>(i - 1)] + d.at(i, j)));
    }
  }
  return worst;
}

}  // namespace ridepool
