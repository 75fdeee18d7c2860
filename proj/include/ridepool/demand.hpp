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

// Travel requests and the signed vertex-by-vertex demand matrix.
//
// Sign convention (the only place it is spelled out):
//   DemandMatrix::at(i, j) for i != j is the rate of users travelling from
//   origin j to destination i, so column j collects everything leaving j and
//   the diagonal entry is minus the off-diagonal column sum. A vehicle flow
//   x^j serving column j has outflow at its origin and inflow at its
//   destinations, so with B(i, p) = +1 for arcs leaving i the routed flows
//   satisfy  B x^j = -D(:, j).  `required_divergence` returns that right-hand
//   side; flow checks compare against it rather than against D directly.

#include <cstddef>
#include <span>
#include <vector>

#include "ridepool/graph.hpp"

namespace ridepool {

struct Request {
  VertexId origin = 0;
  VertexId destination = 0;
  double rate = 0.0;  // users per hour

  bool operator==(const Request&) const = default;
};

/// Ordered list of requests with pairwise distinct (origin, destination).
class RequestSet {
 public:
  RequestSet() = default;
  /// Throws ValidationError on origin == destination, rate <= 0 or
  /// non-finite, or a repeated OD pair.
  explicit RequestSet(std::vector<Request> requests);

  std::size_t size() const { return requests_.size(); }
  bool empty() const { return requests_.empty(); }
  const Request& operator[](std::size_t m) const { return requests_[m]; }
  std::span<const Request> requests() const { return requests_; }
  auto begin() const { return requests_.begin(); }
  auto end() const { return requests_.end(); }

  double total_rate() const;

 private:
  std::vector<Request> requests_;
};

class DemandMatrix {
 public:
  explicit DemandMatrix(int vertex_count);

  int vertex_count() const { return n_; }

  /// Entry (row = destination i, column = origin j), 1-based.
  double at(VertexId i, VertexId j) const { return entries_[index(i, j)]; }

  /// Adds `rate` on the off-diagonal cell for origin -> destination and
  /// keeps the origin column balanced.
  void add_trip(VertexId origin, VertexId destination, double rate);

  /// B x^j = -D(:, j), as a flat vertex-major vector (row i-1, column j-1).
  std::vector<double> required_divergence() const;

  /// Largest |column sum|; zero up to rounding for a valid matrix.
  double max_column_imbalance() const;

  bool has_demand() const;

  std::span<const double> entries() const { return entries_; }

 private:
  std::size_t index(VertexId i, VertexId j) const {
    return static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1);
  }
  int n_;
  std::vector<double> entries_;  // row-major, n x n
};

/// One off-diagonal entry per request. Throws ValidationError if a request
/// touches a vertex outside 1..n.
DemandMatrix demand_from_requests(const RequestSet& rs, int vertex_count);

}  // namespace ridepool
