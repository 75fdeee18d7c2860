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

#include "ridepool/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "ridepool/error.hpp"

namespace ridepool {
namespace {

double relative_slack(double scale) { return 1e-9 * std::max(1.0, scale); }

double improvement_pct(double before, double after) {
  return before > 0.0 ? 100.0 * (before - after) / before : 0.0;
}

}  // namespace

std::size_t AssignmentState::self_pair_iterations() const {
  return static_cast<std::size_t>(
      std::count_if(selections.begin(), selections.end(), [](const PairSelection& s) { return s.m == s.n; }));
}

AssignmentState greedy_assign(const RequestSet& rs, const PairwiseTable& table, WaitWindow w,
                              const AssignmentOptions& options) {
  const std::size_t count = rs.size();
  if (table.request_count() != count) {
    throw ValidationError("pairwise table covers " + std::to_string(table.request_count()) +
                          " requests, request set has " + std::to_string(count));
  }
  AssignmentState st;
  st.accounting = options.self_pairs;
  st.beta = SquareMatrix(count);
  st.gamma = SquareMatrix(count);
  st.delta_live = SquareMatrix(count);
  st.alpha_residual.resize(count);
  for (std::size_t m = 0; m < count; ++m) st.alpha_residual[m] = rs[m].rate;

  std::vector<PairSelection> order;
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t n = m; n < count; ++n) {
      const double d = table.delta(m, n);
      st.delta_live(m, n) = d;
      st.delta_live(n, m) = d;
      if (d > 0.0) order.push_back({m, n, d, 0.0});
    }
  }
  // Improvements are only ever cleared, never raised, so repeatedly taking
  // the argmax visits the positive entries in this order.
  std::sort(order.begin(), order.end(), [](const PairSelection& a, const PairSelection& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });

  for (PairSelection sel : order) {
    const std::size_t m = sel.m;
    const std::size_t n = sel.n;
    double& am = st.alpha_residual[m];
    double& an = st.alpha_residual[n];
    const bool same_od = rs[m].origin == rs[n].origin && rs[m].destination == rs[n].destination;
    double gamma = 0.0;
    if (same_od) {
      st.beta(m, n) = am;
      st.beta(n, m) = am;
      gamma = am * pair_probability(am, am, w) / 2.0;
      st.gamma(m, n) = gamma;
      st.gamma(n, m) = gamma;
      am -= options.self_pairs == SelfPairAccounting::kTwoUsersPerVehicle ? 2.0 * gamma : gamma;
    } else {
      st.beta(m, n) = am;
      st.beta(n, m) = an;
      gamma = std::min(am, an) * pair_probability(am, an, w);
      st.gamma(m, n) = gamma;
      st.gamma(n, m) = gamma;
      am -= gamma;
      an -= gamma;
    }
    am = std::max(am, 0.0);
    an = std::max(an, 0.0);
    st.delta_live(m, n) = 0.0;
    st.delta_live(n, m) = 0.0;
    sel.gamma = gamma;
    st.selections.push_back(sel);
  }
  return st;
}

PooledDemandResult build_pooled_demand(const RequestSet& rs, const AssignmentState& state,
                                       const PairwiseTable& table, int vertex_count) {
  const std::size_t count = rs.size();
  if (state.request_count() != count || table.request_count() != count) {
    throw ValidationError("assignment state, table and request set sizes differ");
  }
  const double total = rs.total_rate();
  const double slack = relative_slack(total);

  PooledDemandResult out;
  out.d_rp = DemandMatrix(vertex_count);
  out.iterations = state.iterations();

  for (std::size_t m = 0; m < count; ++m) {
    const double residual = state.alpha_residual[m];
    if (residual < -slack) throw ValidationError("negative residual rate for request " + std::to_string(m + 1));
    double used = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      const double g = state.gamma(m, n);
      if (g < 0.0) throw ValidationError("negative pooled rate");
      if (std::fabs(g - state.gamma(n, m)) > slack) throw ValidationError("pooled rates not symmetric");
      if (n != m && g > std::min(state.beta(m, n), state.beta(n, m)) + slack) {
        throw ValidationError("pooled rate exceeds assigned rate");
      }
      used += g;
    }
    if (used > rs[m].rate + slack) {
      throw ValidationError("request " + std::to_string(m + 1) + " pools more than its rate");
    }
    if (residual > 0.0) out.d_rp.add_trip(rs[m].origin, rs[m].destination, residual);
    out.solo_user_rate += std::max(residual, 0.0);
  }

  for (const PairSelection& sel : state.selections) {
    const double g = state.gamma(sel.m, sel.n);
    if (g <= 0.0) continue;
    const PairEvaluation& e = table.entry(sel.m, sel.n);
    for (const Leg& leg : e.best.config.legs) out.d_rp.add_trip(leg.from, leg.to, g);
    out.pooled_vehicle_rate += g;
    out.pooled_user_rate += 2.0 * g;
  }

  if (state.accounting == SelfPairAccounting::kTwoUsersPerVehicle) {
    const double served = out.solo_user_rate + out.pooled_user_rate;
    if (std::fabs(served - total) > slack) {
      throw ValidationError("user-rate accounting mismatch: served " + std::to_string(served) +
                            ", requested " + std::to_string(total));
    }
  }
  double unpooled = 0.0;
  for (double r : state.alpha_residual) unpooled += std::max(r, 0.0);
  out.pooled_fraction = total > 0.0 ? std::clamp((total - unpooled) / total, 0.0, 1.0) : 0.0;
  return out;
}

RidePoolingResult solve_ridepooling(const RoadGraph& g, const TravelTimeTable& tbl,
                                    const RequestSet& rs, const PairwiseTable& table,
                                    WaitWindow w, const AssignmentOptions& options) {
  RidePoolingResult out;
  out.assignment = greedy_assign(rs, table, w, options);
  out.pooled = build_pooled_demand(rs, out.assignment, table, g.vertex_count());
  out.baseline = solve_flow(g, tbl, demand_from_requests(rs, g.vertex_count()));
  out.solution = solve_flow(g, tbl, out.pooled.d_rp);
  out.improvement_J_pct = improvement_pct(out.baseline.objective_J, out.solution.objective_J);
  out.improvement_J_tilde_pct =
      improvement_pct(out.baseline.objective_J_tilde, out.solution.objective_J_tilde);
  return out;
}

RidePoolingResult solve_ridepooling(const RoadGraph& g, const TravelTimeTable& tbl,
                                    const RequestSet& rs, double delay_cap, WaitWindow w,
                                    const AssignmentOptions& options) {
  const PairwiseTable table = build_pairwise_table(tbl, rs, delay_cap);
  return solve_ridepooling(g, tbl, rs, table, w, options);
}

void write_assignment_csv(std::ostream& out, const AssignmentState& state,
                          const PairwiseTable& table) {
  out << "m,n,beta_mn,beta_nm,gamma_mn,config_id\n";
  char buf[256];
  for (const PairSelection& s : state.selections) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g,%.9g,%d\n", s.m + 1, s.n + 1,
                  state.beta(s.m, s.n), state.beta(s.n, s.m), state.gamma(s.m, s.n),
                  table.entry(s.m, s.n).best.config.config_id);
    out << buf;
  }
}

}  // namespace ridepool
