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

#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ridepool/error.hpp"
#include "ridepool/tntp.hpp"

using namespace ridepool;

namespace {

const std::filesystem::path kData = RIDEPOOL_DATA_DIR;

const char* kTinyNet =
    "<NUMBER OF ZONES> 3\n"
    "<NUMBER OF NODES> 3\n"
    "<NUMBER OF LINKS> 2\n"
    "<END OF METADATA>\n"
    "~ init term cap len fft ;\n"
    "1 2 100 1 2.5 0.15 4 0 0 1 ;\n"
    "2 3 100 1 4 ;\n";

}  // namespace

TEST_CASE("Sioux Falls network and trips load with the expected sizes") {
  const RoadGraph g = load_tntp_network(kData / "sioux_falls/SiouxFalls_net.tntp");
  CHECK(g.vertex_count() == 24);
  CHECK(g.arc_count() == 76);
  const auto a = g.find_arc(1, 2);
  REQUIRE(a);
  CHECK(g.arc(*a).travel_time == 6.0);

  const TripTable trips = load_tntp_trips(kData / "sioux_falls/SiouxFalls_trips.tntp");
  CHECK(trips.zone_count() == 24);
  CHECK(trips.total_flow() == doctest::Approx(360600.0));
  REQUIRE(trips.header_total);
  CHECK(*trips.header_total == 360600.0);
  CHECK(trips.nonzero_count() == 528);
  CHECK(trips.flow(1, 2) == 100.0);
  CHECK(trips.flow(1, 10) == 1300.0);
  CHECK(trips.dropped_self_trips == 0);
}

TEST_CASE("network records use the fifth field as travel time") {
  const RoadGraph g = parse_tntp_network(std::string_view(kTinyNet));
  CHECK(g.vertex_count() == 3);
  CHECK(g.arc(0).travel_time == 2.5);
  CHECK(g.arc(1).travel_time == 4.0);
}

TEST_CASE("network parse errors") {
  std::string wrong_count = kTinyNet;
  wrong_count.replace(wrong_count.find("LINKS> 2"), 8, "LINKS> 3");
  CHECK_THROWS_AS(parse_tntp_network(std::string_view(wrong_count)), ValidationError);

  CHECK_THROWS_AS(parse_tntp_network(std::string_view("<NUMBER OF NODES> 2\n1 2 1 1 1 ;\n")), ParseError);

  const std::string bad_number = std::string(kTinyNet) + "3 1 100 1 x ;\n";
  try {
    parse_tntp_network(std::string_view(bad_number));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
    CHECK(e.column() == 11);
  }

  const std::string short_record = std::string(kTinyNet) + "3 1 100 ;\n";
  CHECK_THROWS_AS(parse_tntp_network(std::string_view(short_record)), ParseError);
}

TEST_CASE("trip tables drop self trips and accept several entries per line") {
  const TripTable t = parse_tntp_trips(std::string_view(
      "<NUMBER OF ZONES> 3\n<END OF METADATA>\n"
      "Origin 1\n 1 : 5.0; 2 : 1.5; 3 : 2;\n"
      "Origin 3\n 1 : 4;\n"));
  CHECK(t.flow(1, 2) == 1.5);
  CHECK(t.flow(1, 3) == 2.0);
  CHECK(t.flow(3, 1) == 4.0);
  CHECK(t.flow(1, 1) == 0.0);
  CHECK(t.dropped_self_trips == 1);
  CHECK(t.dropped_self_flow == 5.0);
  CHECK(t.total_flow() == 7.5);
  CHECK_FALSE(t.header_total.has_value());
}

TEST_CASE("trip table errors") {
  CHECK_THROWS_AS(parse_tntp_trips(std::string_view("<NUMBER OF ZONES> 2\n<END OF METADATA>\n 1 : 2;\n")),
                  ParseError);
  CHECK_THROWS_AS(parse_tntp_trips(std::string_view("<NUMBER OF ZONES> 2\n<END OF METADATA>\nOrigin 3\n")),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_tntp_trips(std::string_view("<NUMBER OF ZONES> 2\n<END OF METADATA>\nOrigin 1\n 5 : 2;\n")),
      ValidationError);
  try {
    parse_tntp_trips(std::string_view("<NUMBER OF ZONES> 2\n<END OF METADATA>\nOrigin 1\n 2 ; 2;\n"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("trip tables round-trip through the writer") {
  const TripTable t = load_tntp_trips(kData / "sioux_falls/SiouxFalls_trips.tntp");
  std::ostringstream os;
  write_tntp_trips(os, t);
  CHECK(parse_tntp_trips(std::string_view(os.str())) == t);
}

TEST_CASE("scaling trips to a request set") {
  TripTable t(3);
  t.set_flow(1, 2, 30.0);
  t.set_flow(3, 1, 10.0);
  t.set_flow(2, 3, 0.5);
  const ScaledRequests s = scale_to_requests(t, 81.0);
  REQUIRE(s.requests.size() == 3);
  CHECK(s.requests[0] == Request{1, 2, 60.0});
  CHECK(s.requests[1] == Request{2, 3, 1.0});
  CHECK(s.requests[2] == Request{3, 1, 20.0});
  CHECK(s.requests.total_rate() == doctest::Approx(81.0));

  const ScaledRequests floored = scale_to_requests(t, 81.0, 5.0);
  CHECK(floored.requests.size() == 2);
  CHECK(floored.dropped_count == 1);
  CHECK(floored.dropped_rate == doctest::Approx(1.0));

  CHECK_THROWS_AS(scale_to_requests(t, 0.0), ValidationError);
  CHECK_THROWS_AS(scale_to_requests(t, 1.0, -1.0), ValidationError);
  CHECK_THROWS_AS(scale_to_requests(TripTable(2), 1.0), ValidationError);
}
