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

// Greedy pooling assignment and the equivalent pooled demand matrix.
//
// Every unordered pair (m, n) with a positive unit improvement dJ~_mn is
// visited once, in order of decreasing improvement (ties: smallest (m, n)).
// A visit assigns all remaining rate of both requests to the pair,
//   beta_mn = a'_m,  beta_nm = a'_n,
//   gamma   = min(beta_mn, beta_nm) * P(beta_mn, beta_nm),
// and returns the part that did not pool to the requests:
//   a'_m -= gamma,  a'_n -= gamma.
// A stream paired with itself uses gamma_mm = a'_m * P(a'_m, a'_m) / 2
// vehicles; each pooled vehicle carries two users of the stream.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ridepool/demand.hpp"
#include "ridepool/flow.hpp"
#include "ridepool/graph.hpp"
#include "ridepool/pooling_spatial.hpp"
#include "ridepool/pooling_temporal.hpp"

namespace ridepool {

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), v_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

enum class SelfPairAccounting {
  /// A self-pooled vehicle removes two users from the stream's residual,
  /// which is what running the residual update for m and then for n = m
  /// does. Keeps user rate conserved.
  kTwoUsersPerVehicle,
  /// Removes gamma_mm once. Serves more users than requested; kept only
  /// for comparison.
  kSingleDeduction,
};

struct AssignmentOptions {
  SelfPairAccounting self_pairs = SelfPairAccounting::kTwoUsersPerVehicle;
};

struct PairSelection {
  std::size_t m = 0;
  std::size_t n = 0;  // m <= n
  double delta = 0.0;
  double gamma = 0.0;
};

struct AssignmentState {
  SquareMatrix beta;
  SquareMatrix gamma;  // symmetric
  SquareMatrix delta_live;
  std::vector<double> alpha_residual;
  std::vector<PairSelection> selections;  // in visiting order
  SelfPairAccounting accounting = SelfPairAccounting::kTwoUsersPerVehicle;

  std::size_t request_count() const { return alpha_residual.size(); }
  std::size_t iterations() const { return selections.size(); }
  std::size_t self_pair_iterations() const;
};

/// Runs the greedy assignment. Throws ValidationError if the table does not
/// match the request set.
AssignmentState greedy_assign(const RequestSet& rs, const PairwiseTable& table, WaitWindow w,
                              const AssignmentOptions& options = {});

struct PooledDemandResult {
  DemandMatrix d_rp{1};
  double pooled_fraction = 0.0;  // pooled user rate / total request rate
  std::size_t iterations = 0;
  double solo_user_rate = 0.0;       // users served alone
  double pooled_user_rate = 0.0;     // users riding in a pooled vehicle
  double pooled_vehicle_rate = 0.0;  // sum over pairs of gamma (one vehicle each)
};

/// Residual rate of each request on its own OD plus gamma on every leg of
/// each selected pair's best configuration. Throws ValidationError if the
/// state violates its invariants or, under kTwoUsersPerVehicle, if served
/// users do not add up to the requested rate.
PooledDemandResult build_pooled_demand(const RequestSet& rs, const AssignmentState& state,
                                       const PairwiseTable& table, int vertex_count);

struct RidePoolingResult {
  AssignmentState assignment;
  PooledDemandResult pooled;
  FlowSolution solution;  // with d_rp
  FlowSolution baseline;  // with the unpooled demand
  double improvement_J_pct = 0.0;
  double improvement_J_tilde_pct = 0.0;
};

RidePoolingResult solve_ridepooling(const RoadGraph& g, const TravelTimeTable& tbl,
                                    const RequestSet& rs, const PairwiseTable& table,
                                    WaitWindow w, const AssignmentOptions& options = {});

RidePoolingResult solve_ridepooling(const RoadGraph& g, const TravelTimeTable& tbl,
                                    const RequestSet& rs, double delay_cap, WaitWindow w,
                                    const AssignmentOptions& options = {});

/// CSV: m,n,beta_mn,beta_nm,gamma_mn,config_id for every visited pair.
void write_assignment_csv(std::ostream& out, const AssignmentState& state,
                          const PairwiseTable& table);

}  // namespace ridepool
