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

// Readers for the TNTP network and trips formats, a trips writer, and the
// scaling that turns a trip table into a request set.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ridepool/demand.hpp"
#include "ridepool/graph.hpp"

namespace ridepool {

/// Network file: arc cost is the free_flow_time column; capacity and BPR
/// fields are read for validation and ignored. Arc order is record order.
/// Throws ParseError (missing END OF METADATA, non-numeric field) or
/// ValidationError (link count mismatch, invalid graph).
RoadGraph parse_tntp_network(std::istream& in);
RoadGraph parse_tntp_network(std::string_view text);
RoadGraph load_tntp_network(const std::filesystem::path& path);

class TripTable {
 public:
  explicit TripTable(int zone_count);

  int zone_count() const { return zones_; }
  /// Flow from `origin` to `destination` (trips per unit time).
  double flow(VertexId origin, VertexId destination) const {
    return flows_[index(destination, origin)];
  }
  void set_flow(VertexId origin, VertexId destination, double value);

  double total_flow() const;
  std::size_t nonzero_count() const;

  /// Self-trips dropped at parse time.
  std::size_t dropped_self_trips = 0;
  double dropped_self_flow = 0.0;
  /// <TOTAL OD FLOW> header value, when present.
  std::optional<double> header_total;

  bool operator==(const TripTable& other) const { return zones_ == other.zones_ && flows_ == other.flows_; }

 private:
  std::size_t index(VertexId dest, VertexId origin) const {
    return static_cast<std::size_t>(dest - 1) * static_cast<std::size_t>(zones_) +
           static_cast<std::size_t>(origin - 1);
  }
  int zones_;
  std::vector<double> flows_;  // [destination][origin]
};

TripTable parse_tntp_trips(std::istream& in);
TripTable parse_tntp_trips(std::string_view text);
TripTable load_tntp_trips(const std::filesystem::path& path);

/// Writes the table in TNTP trips format with round-trip exact values.
void write_tntp_trips(std::ostream& out, const TripTable& trips);

struct ScaledRequests {
  RequestSet requests;
  std::size_t dropped_count = 0;  // cells whose scaled rate fell below the floor
  double dropped_rate = 0.0;
};

/// One request per positive cell, ordered by origin then destination, with
/// rates proportional to the cell and summing to `total_rate` before the
/// floor is applied. Cells scaled below `rate_floor` are dropped and
/// reported, not redistributed. Throws ValidationError on total_rate <= 0,
/// rate_floor < 0, or an all-zero table.
ScaledRequests scale_to_requests(const TripTable& trips, double total_rate, double rate_floor = 0.0);

}  // namespace ridepool
