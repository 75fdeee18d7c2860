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

#include "ridepool/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ridepool/error.hpp"
#include "ridepool/parallel.hpp"

namespace ridepool {
namespace {

using Clock = std::chrono::steady_clock;

SweepRow fill_row(double demand, double tbar, double dbar, const RidePoolingResult& r) {
  SweepRow row;
  row.demand_total = demand;
  row.t_bar = tbar;
  row.delta_bar = dbar;
  row.J = vehicle_hours_per_hour(r.solution.objective_J);
  row.J_tilde = vehicle_hours_per_hour(r.solution.objective_J_tilde);
  row.J_nopool = vehicle_hours_per_hour(r.baseline.objective_J);
  row.improvement_pct = r.improvement_J_pct;
  row.pooled_fraction_pct = 100.0 * r.pooled.pooled_fraction;
  row.rebalancing_share_pct = 100.0 * r.solution.rebalancing_share;
  row.iterations = r.assignment.iterations();
  return row;
}

SweepRow error_row(double demand, double tbar, double dbar, const std::string& what) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.demand_total = demand;
  row.t_bar = tbar;
  row.delta_bar = dbar;
  row.J = row.J_tilde = row.J_nopool = nan;
  row.improvement_pct = row.pooled_fraction_pct = row.rebalancing_share_pct = nan;
  row.error = what.empty() ? "unknown error" : what;
  return row;
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("sweep spec lacks '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ValidationError(std::string("'") + key + "' must be a number list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(std::string("'") + key + "' must be a number list");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (demand_totals.empty() || wait_caps.empty() || delay_caps.empty()) {
    throw ValidationError("sweep lists must be nonempty");
  }
  for (double d : demand_totals) {
    if (!std::isfinite(d) || d <= 0.0) throw ValidationError("demand totals must be positive");
  }
  for (double t : wait_caps) {
    if (!std::isfinite(t) || t <= 0.0) throw ValidationError("waiting caps must be positive");
  }
  for (double d : delay_caps) {
    if (!(d >= 0.0)) throw ValidationError("delay caps must be nonnegative");
  }
  if (rate_floor < 0.0) throw ValidationError("rate floor must be nonnegative");
}

SweepSpec default_sweep_spec(const std::filesystem::path& network, const std::filesystem::path& trips) {
  SweepSpec spec;
  spec.demand_totals = {100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0};
  spec.wait_caps = {1.0, 2.5, 5.0, 10.0};
  spec.delay_caps = {1.0, 2.5, 5.0, 10.0};
  spec.network_path = network;
  spec.trips_path = trips;
  return spec;
}

SweepSpec parse_sweep_spec(std::string_view text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("sweep spec must be a JSON object");
  SweepSpec spec;
  spec.demand_totals = number_list(j, "demand_totals");
  spec.wait_caps = number_list(j, "wait_caps");
  spec.delay_caps = number_list(j, "delay_caps");
  auto path = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw ValidationError(std::string("sweep spec lacks string '") + key + "'");
    }
    std::filesystem::path p = j.at(key).get<std::string>();
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  spec.network_path = path("network_path");
  spec.trips_path = path("trips_path");
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.rate_floor = j.value("rate_floor", 0.0);
  spec.record_timing = j.value("record_timing", false);
  spec.threads = j.value("threads", 0u);
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sweep spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str(), path.parent_path());
}

Scenario make_scenario(RoadGraph graph, TripTable trips) {
  if (trips.zone_count() > graph.vertex_count()) {
    throw ValidationError("trip table has more zones than the network has nodes");
  }
  TravelTimeTable table = all_pairs_shortest_times(graph);
  return Scenario{std::move(graph), std::move(table), std::move(trips)};
}

Scenario load_scenario(const std::filesystem::path& network, const std::filesystem::path& trips) {
  return make_scenario(load_tntp_network(network), load_tntp_trips(trips));
}

std::vector<SweepRow> run_sweep(const Scenario& sc, const SweepSpec& spec) {
  spec.validate();
  const std::size_t nd = spec.demand_totals.size();
  const std::size_t nt = spec.wait_caps.size();
  const std::size_t nx = spec.delay_caps.size();
  std::vector<SweepRow> rows(nd * nt * nx);
  auto slot = [&](std::size_t d, std::size_t t, std::size_t x) -> SweepRow& {
    return rows[(d * nt + t) * nx + x];
  };

  // One work item per (demand, delay cap): the pairwise table is shared by
  // every waiting cap.
  detail::parallel_for(
      nd * nx,
      [&](std::size_t item) {
        const std::size_t d = item / nx;
        const std::size_t x = item % nx;
        const double demand = spec.demand_totals[d];
        const double dbar = spec.delay_caps[x];
        ScaledRequests scaled;
        PairwiseTable table;
        try {
          scaled = scale_to_requests(sc.trips, demand, spec.rate_floor);
          table = build_pairwise_table(sc.table, scaled.requests, dbar, {.threads = 1});
        } catch (const std::exception& e) {
          for (std::size_t t = 0; t < nt; ++t) slot(d, t, x) = error_row(demand, spec.wait_caps[t], dbar, e.what());
          return;
        }
        for (std::size_t t = 0; t < nt; ++t) {
          const double tbar = spec.wait_caps[t];
          try {
            const auto start = Clock::now();
            const RidePoolingResult r =
                solve_ridepooling(sc.graph, sc.table, scaled.requests, table, WaitWindow::from_minutes(tbar));
            SweepRow row = fill_row(demand, tbar, dbar, r);
            if (spec.record_timing) {
              row.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
            }
            slot(d, t, x) = std::move(row);
          } catch (const std::exception& e) {
            slot(d, t, x) = error_row(demand, tbar, dbar, e.what());
          }
        }
      },
      spec.threads);
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  return run_sweep(load_scenario(spec.network_path, spec.trips_path), spec);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "demand_total,t_bar,delta_bar,J,J_tilde,J_nopool,improvement_pct,pooled_fraction_pct,"
         "rebalancing_share_pct,iterations,wall_time_ms\n";
  char buf[512];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%zu,%.3f\n",
                  r.demand_total, r.t_bar, r.delta_bar, r.J, r.J_tilde, r.J_nopool, r.improvement_pct,
                  r.pooled_fraction_pct, r.rebalancing_share_pct, r.iterations, r.wall_time_ms);
    out << buf;
  }
}

SingleReport run_single(const Scenario& sc, double demand_total, double t_bar_minutes,
                        double delta_bar_minutes, double rate_floor) {
  const auto start = Clock::now();
  SingleReport rep;
  rep.requests = scale_to_requests(sc.trips, demand_total, rate_floor);
  rep.table = build_pairwise_table(sc.table, rep.requests.requests, delta_bar_minutes);
  rep.result = solve_ridepooling(sc.graph, sc.table, rep.requests.requests, rep.table,
                                 WaitWindow::from_minutes(t_bar_minutes));
  rep.row = fill_row(demand_total, t_bar_minutes, delta_bar_minutes, rep.result);
  rep.row.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

void write_flows_csv(std::ostream& out, const RoadGraph& g, const FlowSolution& sol) {
  out << "arc,tail,head,travel_time,active_flow,rebalancing_flow\n";
  const std::vector<double> active = sol.total_active_flow();
  char buf[256];
  for (ArcIndex p = 0; p < g.arc_count(); ++p) {
    const Arc& a = g.arc(p);
    std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.10g,%.10g,%.10g\n", p + 1, a.tail, a.head, a.travel_time,
                  active[p], sol.rebalancing_flow.empty() ? 0.0 : sol.rebalancing_flow[p]);
    out << buf;
  }
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("spearman needs two equal-length series");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace ridepool
