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

#include "ridepool/demand.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "ridepool/error.hpp"

namespace ridepool {

RequestSet::RequestSet(std::vector<Request> requests) : requests_(std::move(requests)) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Request& r : requests_) {
    const std::string od = std::to_string(r.origin) + "->" + std::to_string(r.destination);
    if (r.origin == r.destination) throw ValidationError("request " + od + " has origin == destination");
    if (!std::isfinite(r.rate) || r.rate <= 0.0) {
      throw ValidationError("request " + od + " has non-positive rate");
    }
    if (!seen.emplace(r.origin, r.destination).second) {
      throw ValidationError("duplicate origin-destination pair " + od);
    }
  }
}

double RequestSet::total_rate() const {
  double s = 0.0;
  for (const Request& r : requests_) s += r.rate;
  return s;
}

DemandMatrix::DemandMatrix(int vertex_count) : n_(vertex_count) {
  if (vertex_count <= 0) throw ValidationError("vertex_count must be positive");
  entries_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
}

void DemandMatrix::add_trip(VertexId origin, VertexId destination, double rate) {
  if (origin < 1 || origin > n_ || destination < 1 || destination > n_) {
    throw ValidationError("trip " + std::to_string(origin) + "->" + std::to_string(destination) +
                          " outside vertex range 1.." + std::to_string(n_));
  }
  if (origin == destination) throw ValidationError("trip with origin == destination");
  entries_[index(destination, origin)] += rate;
  entries_[index(origin, origin)] -= rate;
}

std::vector<double> DemandMatrix::required_divergence() const {
  std::vector<double> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(), [](double v) { return -v; });
  return out;
}

double DemandMatrix::max_column_imbalance() const {
  double worst = 0.0;
  for (VertexId j = 1; j <= n_; ++j) {
    double s = 0.0;
    for (VertexId i = 1; i <= n_; ++i) s += at(i, j);
    worst = std::max(worst, std::fabs(s));
  }
  return worst;
}

bool DemandMatrix::has_demand() const {
  for (VertexId j = 1; j <= n_; ++j) {
    for (VertexId i = 1; i <= n_; ++i) {
      if (i != j && at(i, j) > 0.0) return true;
    }
  }
  return false;
}

DemandMatrix demand_from_requests(const RequestSet& rs, int vertex_count) {
  DemandMatrix d(vertex_count);
  for (const Request& r : rs) d.add_trip(r.origin, r.destination, r.rate);
  return d;
}

}  // namespace ridepool
