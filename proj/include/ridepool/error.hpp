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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ridepool {

/// Invalid input to a constructor or operation (bad ids, negative values,
/// violated preconditions).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A demanded origin-destination pair has no path in the road graph.
class UnreachableError : public std::runtime_error {
 public:
  UnreachableError(int origin, int destination, const std::string& what)
      : std::runtime_error(what), origin_(origin), destination_(destination) {}
  int origin() const { return origin_; }
  int destination() const { return destination_; }

 private:
  int origin_;
  int destination_;
};

/// Rebalancing cannot restore vehicle balance (net imbalance inside a
/// component that is not connected to the rest of the demand).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed TNTP text. Line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(format(line, column, message)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message) {
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ridepool
