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

// Parameter sweeps over total demand, waiting window and delay cap.
//
// Units at this layer: demand in requests/hour, waiting window and delay
// cap in minutes, objectives in vehicle-hours per hour (the average number
// of vehicles in use). Conversion happens here and in WaitWindow only.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ridepool/assignment.hpp"
#include "ridepool/graph.hpp"
#include "ridepool/pooling_spatial.hpp"
#include "ridepool/tntp.hpp"

namespace ridepool {

/// Travel time [min] x rate [1/h] -> vehicle-hours per hour.
inline double vehicle_hours_per_hour(double minute_rate) { return minute_rate / 60.0; }

struct SweepSpec {
  std::vector<double> demand_totals;  // requests/hour
  std::vector<double> wait_caps;      // minutes
  std::vector<double> delay_caps;     // minutes
  std::filesystem::path network_path;
  std::filesystem::path trips_path;
  std::uint64_t seed = 0;
  double rate_floor = 0.0;
  /// When false the wall_time_ms column is written as 0 so that repeated
  /// runs produce identical files.
  bool record_timing = false;
  unsigned threads = 0;

  /// Throws ValidationError on empty lists or out-of-range values.
  void validate() const;
};

/// JSON object with keys demand_totals, wait_caps, delay_caps, network_path,
/// trips_path and optional seed, rate_floor, record_timing, threads.
/// Relative paths resolve against `base_dir`.
/// Demand totals 100 to 5000 requests/hour; waiting and delay caps
/// {1, 2.5, 5, 10} minutes.
SweepSpec default_sweep_spec(const std::filesystem::path& network, const std::filesystem::path& trips);

SweepSpec parse_sweep_spec(std::string_view json, const std::filesystem::path& base_dir = {});
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepRow {
  double demand_total = 0.0;
  double t_bar = 0.0;
  double delta_bar = 0.0;
  double J = 0.0;
  double J_tilde = 0.0;
  double J_nopool = 0.0;
  double improvement_pct = 0.0;
  double pooled_fraction_pct = 0.0;
  double rebalancing_share_pct = 0.0;
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
  std::string error;  // empty on success; not part of the CSV

  bool ok() const { return error.empty(); }
};

struct Scenario {
  RoadGraph graph;
  TravelTimeTable table;
  TripTable trips;
};

Scenario load_scenario(const std::filesystem::path& network, const std::filesystem::path& trips);
Scenario make_scenario(RoadGraph graph, TripTable trips);

/// Rows ordered by demand, then waiting cap, then delay cap, each in the
/// order given. A failing cell yields a row with NaN metrics and `error`
/// set; other cells are unaffected.
std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec);
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SingleReport {
  SweepRow row;
  ScaledRequests requests;
  PairwiseTable table;
  RidePoolingResult result;
};

/// One sweep cell with every intermediate kept. Throws on failure.
SingleReport run_single(const Scenario& scenario, double demand_total, double t_bar_minutes,
                        double delta_bar_minutes, double rate_floor = 0.0);

/// CSV: arc,tail,head,travel_time,active_flow,rebalancing_flow.
void write_flows_csv(std::ostream& out, const RoadGraph& g, const FlowSolution& sol);

/// Spearman rank correlation with average ranks for ties; 0 if either side
/// is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ridepool
