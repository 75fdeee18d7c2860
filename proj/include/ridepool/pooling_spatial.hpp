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

// Spatial analysis of pooling two requests m and n.
//
// There are five ways to serve a pair: configuration 0 serves both alone;
// configurations 1..4 pick up both users before dropping either:
//   1: o_m, o_n, d_n, d_m     2: o_m, o_n, d_m, d_n
//   3: o_n, o_m, d_m, d_n     4: o_n, o_m, d_n, d_m
// Each configuration is a short list of legs (equivalent requests). A
// user's delay is their in-vehicle time along the visit order minus their
// direct shortest time; waiting before pickup is not part of it.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ridepool/demand.hpp"
#include "ridepool/graph.hpp"

namespace ridepool {

inline constexpr int kConfigCount = 5;

struct Leg {
  VertexId from = 0;
  VertexId to = 0;
  int occupancy = 1;

  bool operator==(const Leg&) const = default;
};

struct PoolingConfig {
  int config_id = 0;
  /// Pickup/dropoff order for configs 1..4; for config 0 the two trips
  /// back to back (o_m, d_m, o_n, d_n).
  std::vector<VertexId> visit_order;
  /// Consecutive coinciding stops are merged, so a leg never has from == to.
  std::vector<Leg> legs;
};

std::array<PoolingConfig, kConfigCount> enumerate_configs(const Request& m, const Request& n);

struct ConfigEvaluation {
  PoolingConfig config;
  double delay_m = 0.0;  // minutes
  double delay_n = 0.0;
  double cost = 0.0;  // vehicle-minutes per unit of pooled rate
  bool feasible = false;
};

struct PairEvaluation {
  ConfigEvaluation best;
  double config0_cost = 0.0;
  double delta_J_tilde = 0.0;  // config0_cost - best.cost, >= 0
};

/// Delay feasibility admits delays up to delay_cap + kDelaySlack so that
/// detour-free pairs whose delay is zero up to rounding stay feasible at a
/// cap of zero.
inline constexpr double kDelaySlack = 1e-9;

/// Evaluates all five configurations for (m, n) and returns the cheapest
/// feasible one, ties to the smallest config id. Throws UnreachableError if
/// any needed leg has no path.
PairEvaluation evaluate_pair(const TravelTimeTable& tbl, const Request& m, const Request& n,
                             double delay_cap);

/// Same as evaluate_pair but returns every configuration's evaluation.
std::array<ConfigEvaluation, kConfigCount> evaluate_all_configs(const TravelTimeTable& tbl,
                                                                const Request& m,
                                                                const Request& n,
                                                                double delay_cap);

struct PairwiseOptions {
  /// Evaluate (m, m) entries so a stream can pool with itself.
  bool include_self_pairs = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Best configuration for every unordered pair m <= n of a request set.
class PairwiseTable {
 public:
  PairwiseTable() = default;
  PairwiseTable(std::size_t request_count, double delay_cap, bool include_self_pairs);

  std::size_t request_count() const { return m_; }
  double delay_cap() const { return delay_cap_; }
  bool includes_self_pairs() const { return self_pairs_; }
  std::size_t entry_count() const { return entries_.size(); }

  /// Stored entry for the unordered pair; delays are in (min, max) order.
  const PairEvaluation& entry(std::size_t m, std::size_t n) const { return entries_[slot(m, n)]; }
  PairEvaluation& mutable_entry(std::size_t m, std::size_t n) { return entries_[slot(m, n)]; }

  double delta(std::size_t m, std::size_t n) const { return entry(m, n).delta_J_tilde; }
  /// Delay of request `who` when paired with `other`.
  double delay_of(std::size_t who, std::size_t other) const;

 private:
  std::size_t slot(std::size_t m, std::size_t n) const;

  std::size_t m_ = 0;
  double delay_cap_ = 0.0;
  bool self_pairs_ = true;
  std::vector<PairEvaluation> entries_;  // packed upper triangle incl. diagonal
};

/// Errors from evaluate_pair are rethrown as UnreachableError naming the
/// request indices.
PairwiseTable build_pairwise_table(const TravelTimeTable& tbl, const RequestSet& rs,
                                   double delay_cap, const PairwiseOptions& options = {});

/// CSV: m,n,best_config_id,delay_m,delay_n,cost,delta_J_tilde (1-based m,n).
void write_pairwise_csv(std::ostream& out, const PairwiseTable& table);

}  // namespace ridepool
