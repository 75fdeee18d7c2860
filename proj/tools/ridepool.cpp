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

// Command-line front end: solve one scenario, run a sweep, or run the
// brute-force oracle suites.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles/oracles.hpp"
#include "ridepool/error.hpp"
#include "ridepool/experiments.hpp"
#include "ridepool/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace ridepool;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int run_solve(const fs::path& net, const fs::path& trips, double demand, double tbar, double dbar,
              double floor, const fs::path& out_dir) {
  const Scenario sc = load_scenario(net, trips);
  const SingleReport rep = run_single(sc, demand, tbar, dbar, floor);
  const SweepRow& r = rep.row;
  std::printf("requests          %zu (dropped %zu below floor, %.6g/h)\n", rep.requests.requests.size(),
              rep.requests.dropped_count, rep.requests.dropped_rate);
  std::printf("J                 %.6f veh-h/h\n", r.J);
  std::printf("J~                %.6f veh-h/h\n", r.J_tilde);
  std::printf("J without pooling %.6f veh-h/h\n", r.J_nopool);
  std::printf("improvement       %.4f %%\n", r.improvement_pct);
  std::printf("pooled fraction   %.4f %%\n", r.pooled_fraction_pct);
  std::printf("rebalancing share %.4f %%\n", r.rebalancing_share_pct);
  std::printf("greedy iterations %zu\n", r.iterations);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    {
      auto f = open_out(out_dir / "summary.csv");
      write_sweep_csv(f, {r});
    }
    {
      auto f = open_out(out_dir / "pairs.csv");
      write_pairwise_csv(f, rep.table);
    }
    {
      auto f = open_out(out_dir / "assignment.csv");
      write_assignment_csv(f, rep.result.assignment, rep.table);
    }
    {
      auto f = open_out(out_dir / "flows.csv");
      write_flows_csv(f, sc.graph, rep.result.solution);
    }
    std::printf("wrote summary.csv, pairs.csv, assignment.csv, flows.csv to %s\n", out_dir.string().c_str());
  }
  return 0;
}

int run_sweep_cmd(SweepSpec spec, const fs::path& out) {
  const std::vector<SweepRow> rows = run_sweep(spec);
  int failed = 0;
  for (const SweepRow& r : rows) {
    if (!r.ok()) {
      ++failed;
      std::fprintf(stderr, "cell demand=%g t_bar=%g delta_bar=%g failed: %s\n", r.demand_total, r.t_bar,
                   r.delta_bar, r.error.c_str());
    }
  }
  if (out.empty()) {
    write_sweep_csv(std::cout, rows);
  } else {
    auto f = open_out(out);
    write_sweep_csv(f, rows);
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), out.string().c_str());
  }
  return failed == 0 ? 0 : 1;
}

int run_validate(bool quick, std::uint64_t seed) {
  std::printf("kernels: %s\n", std::string(simd::isa_name(simd::active_isa())).c_str());
  const int scale = quick ? 1 : 5;
  const std::vector<oracle::SuiteResult> results = {
      oracle::probability_suite(quick ? 20000 : 1000000, seed),
      oracle::rebalancing_suite(10 * scale, seed + 1),
      oracle::spatial_suite(100 * scale, seed + 2),
      oracle::assignment_suite(20 * scale, seed + 3),
      oracle::knapsack_suite(10 * scale, seed + 4),
  };
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%-20s %s  (%.0f ms) %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.elapsed_ms,
                r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ride-pooling network flow model"};
  app.require_subcommand(1);

  fs::path net, trips, out;
  double demand = 1000.0, tbar = 5.0, dbar = 5.0, floor = 0.0;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "Solve one scenario");
  solve->add_option("--net", net, "TNTP network file")->required()->check(CLI::ExistingFile);
  solve->add_option("--trips", trips, "TNTP trip table")->required()->check(CLI::ExistingFile);
  solve->add_option("--demand", demand, "Total request rate per hour")->capture_default_str();
  solve->add_option("--tbar", tbar, "Waiting-time cap in minutes")->capture_default_str();
  solve->add_option("--dbar", dbar, "Delay cap in minutes")->capture_default_str();
  solve->add_option("--floor", floor, "Drop OD pairs below this rate per hour")->capture_default_str();
  solve->add_option("--out", out, "Directory for CSV outputs");
  solve->add_option("--seed", seed, "Unused by solve; accepted for symmetry");

  fs::path spec_path;
  std::vector<double> demands, tbars, dbars;
  bool timing = false;
  unsigned jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  sweep->add_option("--spec", spec_path, "JSON sweep spec")->check(CLI::ExistingFile);
  sweep->add_option("--net", net, "TNTP network file");
  sweep->add_option("--trips", trips, "TNTP trip table");
  sweep->add_option("--demand", demands, "Total request rates per hour")->delimiter(',');
  sweep->add_option("--tbar", tbars, "Waiting-time caps in minutes")->delimiter(',');
  sweep->add_option("--dbar", dbars, "Delay caps in minutes")->delimiter(',');
  sweep->add_option("--floor", floor, "Drop OD pairs below this rate per hour");
  sweep->add_option("--out", out, "CSV output path (stdout if absent)");
  sweep->add_option("--seed", seed, "Seed recorded with the spec");
  sweep->add_option("--jobs", jobs, "Worker threads (0 = hardware)");
  sweep->add_flag("--timing", timing, "Record wall time per cell");

  bool quick = false;
  auto* validate = app.add_subcommand("validate", "Run the brute-force oracle suites");
  validate->add_flag("--quick", quick, "Smaller instance counts");
  validate->add_option("--seed", seed, "Base seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(net, trips, demand, tbar, dbar, floor, out);
    if (*sweep) {
      SweepSpec spec;
      if (!spec_path.empty()) spec = load_sweep_spec(spec_path);
      if (!net.empty()) spec.network_path = net;
      if (!trips.empty()) spec.trips_path = trips;
      if (!demands.empty()) spec.demand_totals = demands;
      if (!tbars.empty()) spec.wait_caps = tbars;
      if (!dbars.empty()) spec.delay_caps = dbars;
      if (sweep->count("--floor")) spec.rate_floor = floor;
      if (sweep->count("--seed")) spec.seed = seed;
      if (sweep->count("--jobs")) spec.threads = jobs;
      if (timing) spec.record_timing = true;
      if (spec.network_path.empty() || spec.trips_path.empty()) {
        throw ValidationError("sweep needs --net and --trips or a spec naming them");
      }
      return run_sweep_cmd(spec, out);
    }
    if (*validate) return run_validate(quick, seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
