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

#include "ridepool/pooling_spatial.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "ridepool/error.hpp"
#include "ridepool/parallel.hpp"

namespace ridepool {
namespace {

// Stop kinds in a pooled visit order.
enum Stop { kPickM, kPickN, kDropM, kDropN };

constexpr std::array<std::array<Stop, 4>, kConfigCount - 1> kPooledOrders = {{
    {kPickM, kPickN, kDropN, kDropM},
    {kPickM, kPickN, kDropM, kDropN},
    {kPickN, kPickM, kDropM, kDropN},
    {kPickN, kPickM, kDropN, kDropM},
}};

VertexId stop_vertex(Stop s, const Request& m, const Request& n) {
  switch (s) {
    case kPickM:
      return m.origin;
    case kPickN:
      return n.origin;
    case kDropM:
      return m.destination;
    case kDropN:
      return n.destination;
  }
  return 0;
}

double leg_time(const TravelTimeTable& tbl, VertexId from, VertexId to) {
  const double t = tbl.time(from, to);
  if (t == kUnreachable) {
    throw UnreachableError(from, to, "no path between pooling stops " + std::to_string(from) +
                                         " and " + std::to_string(to));
  }
  return t;
}

}  // namespace

std::array<PoolingConfig, kConfigCount> enumerate_configs(const Request& m, const Request& n) {
  std::array<PoolingConfig, kConfigCount> out;
  out[0].config_id = 0;
  out[0].visit_order = {m.origin, m.destination, n.origin, n.destination};
  out[0].legs = {{m.origin, m.destination, 1}, {n.origin, n.destination, 1}};

  for (int c = 1; c < kConfigCount; ++c) {
    PoolingConfig& cfg = out[static_cast<std::size_t>(c)];
    cfg.config_id = c;
    const auto& order = kPooledOrders[static_cast<std::size_t>(c - 1)];
    int aboard = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const VertexId v = stop_vertex(order[k], m, n);
      cfg.visit_order.push_back(v);
      if (k > 0) {
        const VertexId prev = cfg.visit_order[k - 1];
        if (prev != v) cfg.legs.push_back({prev, v, aboard});
      }
      aboard += (order[k] == kPickM || order[k] == kPickN) ? 1 : -1;
    }
  }
  return out;
}

std::array<ConfigEvaluation, kConfigCount> evaluate_all_configs(const TravelTimeTable& tbl,
                                                                const Request& m,
                                                                const Request& n,
                                                                double delay_cap) {
  if (!(delay_cap >= 0.0)) throw ValidationError("delay cap must be nonnegative");
  const auto configs = enumerate_configs(m, n);
  const double direct_m = leg_time(tbl, m.origin, m.destination);
  const double direct_n = leg_time(tbl, n.origin, n.destination);

  std::array<ConfigEvaluation, kConfigCount> out;
  out[0].config = configs[0];
  out[0].cost = direct_m + direct_n;
  out[0].feasible = true;

  for (int c = 1; c < kConfigCount; ++c) {
    const auto ci = static_cast<std::size_t>(c);
    const auto& order = kPooledOrders[ci - 1];
    const auto& visit = configs[ci].visit_order;
    // Elapsed time at each stop from the first pickup.
    std::array<double, 4> at{};
    for (std::size_t k = 1; k < 4; ++k) at[k] = at[k - 1] + leg_time(tbl, visit[k - 1], visit[k]);
    std::array<double, 4> when{};
    for (std::size_t k = 0; k < 4; ++k) when[order[k]] = at[k];

    ConfigEvaluation& ev = out[ci];
    ev.config = configs[ci];
    ev.cost = at[3];
    ev.delay_m = (when[kDropM] - when[kPickM]) - direct_m;
    ev.delay_n = (when[kDropN] - when[kPickN]) - direct_n;
    ev.feasible = ev.delay_m <= delay_cap + kDelaySlack && ev.delay_n <= delay_cap + kDelaySlack;
  }
  return out;
}

PairEvaluation evaluate_pair(const TravelTimeTable& tbl, const Request& m, const Request& n,
                             double delay_cap) {
  auto all = evaluate_all_configs(tbl, m, n, delay_cap);
  std::size_t best = 0;
  for (std::size_t c = 1; c < all.size(); ++c) {
    if (all[c].feasible && all[c].cost < all[best].cost) best = c;
  }
  PairEvaluation out;
  out.config0_cost = all[0].cost;
  out.best = std::move(all[best]);
  out.delta_J_tilde = out.config0_cost - out.best.cost;
  return out;
}

PairwiseTable::PairwiseTable(std::size_t request_count, double delay_cap, bool include_self_pairs)
    : m_(request_count),
      delay_cap_(delay_cap),
      self_pairs_(include_self_pairs),
      entries_(request_count * (request_count + 1) / 2) {}

std::size_t PairwiseTable::slot(std::size_t m, std::size_t n) const {
  if (m > n) std::swap(m, n);
  if (n >= m_) throw ValidationError("pairwise table index out of range");
  // Row m of the packed upper triangle starts after rows 0..m-1.
  return m * m_ - m * (m - 1) / 2 + (n - m);
}

double PairwiseTable::delay_of(std::size_t who, std::size_t other) const {
  const PairEvaluation& e = entry(who, other);
  return who <= other ? e.best.delay_m : e.best.delay_n;
}

PairwiseTable build_pairwise_table(const TravelTimeTable& tbl, const RequestSet& rs,
                                   double delay_cap, const PairwiseOptions& options) {
  const std::size_t count = rs.size();
  PairwiseTable table(count, delay_cap, options.include_self_pairs);
  detail::parallel_for(
      count,
      [&](std::size_t m) {
        for (std::size_t n = m; n < count; ++n) {
          PairEvaluation& slot = table.mutable_entry(m, n);
          try {
            slot = evaluate_pair(tbl, rs[m], rs[n], delay_cap);
          } catch (const UnreachableError& e) {
            throw UnreachableError(e.origin(), e.destination(),
                                   "pair (" + std::to_string(m + 1) + "," + std::to_string(n + 1) +
                                       "): " + e.what());
          }
          if (m == n && !options.include_self_pairs) {
            // Keep the no-pooling configuration so the entry never attracts pooling.
            slot.best = evaluate_all_configs(tbl, rs[m], rs[n], delay_cap)[0];
            slot.delta_J_tilde = 0.0;
          }
        }
      },
      count >= 64 ? options.threads : 1u);
  return table;
}

void write_pairwise_csv(std::ostream& out, const PairwiseTable& table) {
  out << "m,n,best_config_id,delay_m,delay_n,cost,delta_J_tilde\n";
  char buf[256];
  for (std::size_t m = 0; m < table.request_count(); ++m) {
    for (std::size_t n = m; n < table.request_count(); ++n) {
      const PairEvaluation& e = table.entry(m, n);
      std::snprintf(buf, sizeof buf, "%zu,%zu,%d,%.9g,%.9g,%.9g,%.9g\n", m + 1, n + 1,
                    e.best.config.config_id, e.best.delay_m, e.best.delay_n, e.best.cost,
                    e.delta_J_tilde);
      out << buf;
    }
  }
}

}  // namespace ridepool
