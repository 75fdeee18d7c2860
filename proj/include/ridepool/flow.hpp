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

// Multi-commodity network flow with decoupled active and rebalancing stages.
//
// The active stage routes every demand entry along its tabulated shortest
// path (arcs are uncapacitated and costs nonnegative, so this is optimal
// column by column). The rebalancing stage returns empty vehicles from
// vertices with surplus arrivals to vertices with surplus departures by an
// exact successive-shortest-path min-cost flow on the road graph.

#include <cstddef>
#include <span>
#include <vector>

#include "ridepool/demand.hpp"
#include "ridepool/graph.hpp"

namespace ridepool {

struct FlowSolution {
  int vertex_count = 0;
  std::size_t arc_count = 0;
  /// Column x^j for origin j occupies [ (j-1)*arc_count, j*arc_count ).
  std::vector<double> active_flows;
  std::vector<double> rebalancing_flow;
  double objective_J = 0.0;        // t'(X1 + x^r), minutes x vehicles/hour
  double objective_J_tilde = 0.0;  // t'X1
  double rebalancing_share = 0.0;  // t'x^r / J, 0 when J == 0

  std::span<const double> active_column(VertexId origin) const {
    return std::span<const double>(active_flows)
        .subspan(static_cast<std::size_t>(origin - 1) * arc_count, arc_count);
  }
  /// X * 1.
  std::vector<double> total_active_flow() const;
};

struct Objectives {
  double J = 0.0;
  double J_tilde = 0.0;
  double rebalancing_share = 0.0;
};

/// Throws UnreachableError for a demanded pair without a path and
/// InfeasibleError if rebalancing cannot close the vehicle balance.
FlowSolution solve_flow(const RoadGraph& g, const TravelTimeTable& tbl, const DemandMatrix& d);

/// Recomputes the objectives from the raw flows.
Objectives evaluate_objective(const RoadGraph& g, const FlowSolution& sol);

/// Min-cost uncapacitated flow with B x = required_divergence (entry v-1 is
/// the outflow minus inflow wanted at v; entries must sum to ~0). Returns
/// arc flows.
std::vector<double> solve_rebalancing(const RoadGraph& g, std::span<const double> required_divergence);

/// max_v |B (X1 + x^r)|_v.
double conservation_residual(const RoadGraph& g, const FlowSolution& sol);

/// max_{i,j} |(B X)_{ij} + D_{ij}|, the active-flow constraint in the sign
/// convention documented in demand.hpp.
double demand_residual(const RoadGraph& g, const FlowSolution& sol, const DemandMatrix& d);

}  // namespace ridepool
