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

#include "ridepool/tntp.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "ridepool/error.hpp"

namespace ridepool {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Whitespace-separated tokens of `s`, with columns relative to `base`.
std::vector<Token> split(std::string_view s, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back({s.substr(start, i - start), base + start + 1});
  }
  return out;
}

double to_number(const Token& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(line, tok.column, "expected a number, got '" + std::string(tok.text) + "'");
  }
  return v;
}

int to_id(const Token& tok, std::size_t line) {
  const double v = to_number(tok, line);
  if (v != std::floor(v) || v < 1 || v > 2e9) {
    throw ParseError(line, tok.column, "expected a positive integer id, got '" + std::string(tok.text) + "'");
  }
  return static_cast<int>(v);
}

// Reads `<KEY> value` lines up to <END OF METADATA>. Leaves `line_no` at the
// END line.
std::map<std::string, std::string> read_metadata(std::istream& in, std::size_t& line_no) {
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '~') continue;
    if (t.front() != '<') {
      throw ParseError(line_no, 0, "expected a <KEY> metadata line before <END OF METADATA>");
    }
    const auto close = t.find('>');
    if (close == std::string_view::npos) throw ParseError(line_no, 0, "unterminated metadata tag");
    const std::string key(trim(t.substr(1, close - 1)));
    if (key == "END OF METADATA") return meta;
    meta[key] = std::string(trim(t.substr(close + 1)));
  }
  throw ParseError(line_no + 1, 0, "missing <END OF METADATA>");
}

int metadata_int(const std::map<std::string, std::string>& meta, const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) throw ValidationError("TNTP metadata lacks <" + key + ">");
  int v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || v <= 0) throw ValidationError("<" + key + "> is not a positive integer");
  (void)ptr;
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

}  // namespace

RoadGraph parse_tntp_network(std::istream& in) {
  std::size_t line_no = 0;
  const auto meta = read_metadata(in, line_no);
  const int nodes = metadata_int(meta, "NUMBER OF NODES");
  const int links = metadata_int(meta, "NUMBER OF LINKS");

  std::vector<Arc> arcs;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto semi = body.find(';'); semi != std::string_view::npos) body = body.substr(0, semi);
    const std::string_view t = trim(body);
    if (t.empty() || t.front() == '~') continue;
    const auto tokens = split(body, 0);
    if (tokens.size() < 5) {
      throw ParseError(line_no, 0, "link record needs at least 5 fields, found " + std::to_string(tokens.size()));
    }
    for (const Token& tok : tokens) to_number(tok, line_no);
    Arc a;
    a.tail = to_id(tokens[0], line_no);
    a.head = to_id(tokens[1], line_no);
    a.travel_time = to_number(tokens[4], line_no);
    arcs.push_back(a);
  }
  if (static_cast<int>(arcs.size()) != links) {
    throw ValidationError("<NUMBER OF LINKS> is " + std::to_string(links) + " but " +
                          std::to_string(arcs.size()) + " link records were read");
  }
  return build_graph(nodes, std::move(arcs));
}

RoadGraph parse_tntp_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tntp_network(in);
}

RoadGraph load_tntp_network(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_tntp_network(in);
}

TripTable::TripTable(int zone_count) : zones_(zone_count) {
  if (zone_count <= 0) throw ValidationError("zone count must be positive");
  flows_.assign(static_cast<std::size_t>(zones_) * static_cast<std::size_t>(zones_), 0.0);
}

void TripTable::set_flow(VertexId origin, VertexId destination, double value) {
  if (origin < 1 || origin > zones_ || destination < 1 || destination > zones_) {
    throw ValidationError("zone id out of range 1.." + std::to_string(zones_));
  }
  if (!std::isfinite(value) || value < 0.0) throw ValidationError("trip flow must be finite and >= 0");
  flows_[index(destination, origin)] = value;
}

double TripTable::total_flow() const {
  double s = 0.0;
  for (double v : flows_) s += v;
  return s;
}

std::size_t TripTable::nonzero_count() const {
  std::size_t c = 0;
  for (double v : flows_) c += v > 0.0 ? 1 : 0;
  return c;
}

TripTable parse_tntp_trips(std::istream& in) {
  std::size_t line_no = 0;
  const auto meta = read_metadata(in, line_no);
  TripTable trips(metadata_int(meta, "NUMBER OF ZONES"));
  if (const auto it = meta.find("TOTAL OD FLOW"); it != meta.end()) {
    trips.header_total = to_number({it->second, 0}, line_no);
  }

  int origin = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '~') continue;
    if (t.rfind("Origin", 0) == 0) {
      const auto tokens = split(line, 0);
      if (tokens.size() != 2) throw ParseError(line_no, 0, "expected 'Origin <id>'");
      origin = to_id(tokens[1], line_no);
      if (origin > trips.zone_count()) {
        throw ValidationError("origin " + std::to_string(origin) + " exceeds zone count " +
                              std::to_string(trips.zone_count()));
      }
      continue;
    }
    if (origin == 0) throw ParseError(line_no, 0, "trip entries before the first 'Origin' line");

    // Entries look like `dest : flow;`, several per line.
    std::string_view rest = line;
    std::size_t offset = 0;
    while (!trim(rest).empty()) {
      const auto semi = rest.find(';');
      const std::string_view entry = rest.substr(0, semi);
      if (!trim(entry).empty()) {
        const auto colon = entry.find(':');
        if (colon == std::string_view::npos) {
          throw ParseError(line_no, offset + 1, "malformed 'dest : flow' entry");
        }
        const auto left = split(entry.substr(0, colon), offset);
        const auto right = split(entry.substr(colon + 1), offset + colon + 1);
        if (left.size() != 1 || right.size() != 1) {
          throw ParseError(line_no, offset + 1, "malformed 'dest : flow' entry");
        }
        const int dest = to_id(left[0], line_no);
        const double flow = to_number(right[0], line_no);
        if (dest > trips.zone_count()) {
          throw ValidationError("destination " + std::to_string(dest) + " exceeds zone count");
        }
        if (flow < 0.0) throw ValidationError("negative trip flow on line " + std::to_string(line_no));
        if (dest == origin) {
          if (flow > 0.0) {
            ++trips.dropped_self_trips;
            trips.dropped_self_flow += flow;
          }
        } else {
          trips.set_flow(origin, dest, trips.flow(origin, dest) + flow);
        }
      }
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
      offset += semi + 1;
    }
  }
  return trips;
}

TripTable parse_tntp_trips(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tntp_trips(in);
}

TripTable load_tntp_trips(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_tntp_trips(in);
}

void write_tntp_trips(std::ostream& out, const TripTable& trips) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", trips.total_flow());
  out << "<NUMBER OF ZONES> " << trips.zone_count() << "\n"
      << "<TOTAL OD FLOW> " << buf << "\n"
      << "<END OF METADATA>\n\n\n";
  for (VertexId o = 1; o <= trips.zone_count(); ++o) {
    out << "Origin \t" << o << "\n";
    int on_line = 0;
    for (VertexId d = 1; d <= trips.zone_count(); ++d) {
      const double f = trips.flow(o, d);
      if (f == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%5d : %.17g;", d, f);
      out << buf;
      if (++on_line == 5) {
        out << "\n";
        on_line = 0;
      }
    }
    out << "\n\n";
  }
}

ScaledRequests scale_to_requests(const TripTable& trips, double total_rate, double rate_floor) {
  if (!std::isfinite(total_rate) || total_rate <= 0.0) throw ValidationError("total rate must be positive");
  if (!std::isfinite(rate_floor) || rate_floor < 0.0) throw ValidationError("rate floor must be >= 0");
  const double total = trips.total_flow();
  if (!(total > 0.0)) throw ValidationError("trip table has no positive entries");

  ScaledRequests out;
  std::vector<Request> kept;
  for (VertexId o = 1; o <= trips.zone_count(); ++o) {
    for (VertexId d = 1; d <= trips.zone_count(); ++d) {
      const double f = trips.flow(o, d);
      if (f <= 0.0 || o == d) continue;
      const double rate = total_rate * (f / total);
      if (rate < rate_floor || rate <= 0.0) {
        ++out.dropped_count;
        out.dropped_rate += rate;
        continue;
      }
      kept.push_back({o, d, rate});
    }
  }
  out.requests = RequestSet(std::move(kept));
  return out;
}

}  // namespace ridepool
