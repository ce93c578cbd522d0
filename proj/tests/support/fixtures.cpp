// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace moparker::fixture {

std::vector<TableRow> melbourne_case() {
  return {
      {"172", 10, 4, {14, 0.4, 0.6, 1.0}},
      {"4729", 5, 8, {13, 0.8, 0.3, 1.0}},
      {"4734", 4, 12, {16, 1.0, 0.2, 1.0}},
      {"5129", 6, 23, {29, 1.9, 0.0, 0.73}},
      {"4716", 10, 25, {35, 2.1, 0.0, 0.92}},
  };
}

std::vector<TableRow> rye_case() {
  return {
      {"001", 1, 6, {7, 0.5, 0.3, 1.0}},
      {"037", 4, 11, {15, 0.9, 0.1, 1.0}},
      {"068", 1, 7, {8, 0.6, 0.2, 0.97}},
      {"107", 0, 4, {4, 0.3, 3.6, 1.0}},
      {"003", 0, 6, {6, 0.5, 2.3, 1.0}},
      {"109", 3, 4, {7, 0.3, 0.8, 1.0}},
      {"110", 2, 5, {7, 0.4, 0.5, 1.0}},
  };
}

std::vector<Candidate> as_candidates(const std::vector<TableRow>& rows) {
  std::vector<Candidate> out;
  for (const auto& r : rows) out.push_back({r.lot_id, r.objectives});
  return out;
}

Leg TableRouter::route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const {
  const GeoPoint& lot = mode == TravelMode::Drive ? to : from;
  for (const auto& e : entries_) {
    if (e.centroid == lot) {
      return Leg{mode, {from, to}, mode == TravelMode::Drive ? e.drive_minutes : e.walk_minutes,
                 haversine_distance(from, to)};
    }
  }
  throw RoutingError(mode, "no prescribed leg for this lot");
}

namespace {

// Point at `meters` from `p` along the initial bearing (radians from north).
GeoPoint offset(const GeoPoint& p, double meters, double bearing) {
  const double rad = std::numbers::pi / 180.0;
  const double d = meters / kEarthRadiusMeters;
  const double lat1 = p.lat() * rad;
  const double lat2 = std::asin(std::sin(lat1) * std::cos(d) + std::cos(lat1) * std::sin(d) * std::cos(bearing));
  const double lon2 = p.lon() * rad + std::atan2(std::sin(bearing) * std::sin(d) * std::cos(lat1),
                                                 std::cos(d) - std::sin(lat1) * std::sin(lat2));
  return {lat2 / rad, lon2 / rad};
}

}  // namespace

Timestamp at(const char* iso) { return parse_iso8601(iso, TimeZone("UTC")); }

Query TableScenario::query(double threshold, double epsilon, std::size_t top_k) const {
  return Query{source, destination, TimeWindow(arrive, tau_minutes), duration_minutes, threshold, epsilon, top_k};
}

std::string TableScenario::request_body(double threshold, double epsilon, std::size_t top_k) const {
  return nlohmann::json{{"from", {{"lat", source.lat()}, {"lon", source.lon()}}},
                        {"to", {{"lat", destination.lat()}, {"lon", destination.lon()}}},
                        {"arrive", format_iso8601_utc(arrive)},
                        {"tau_minutes", tau_minutes},
                        {"duration_minutes", duration_minutes},
                        {"threshold_likelihood", threshold},
                        {"epsilon", epsilon},
                        {"top_k", top_k}}
      .dump();
}

TableScenario table_scenario(const std::vector<TableRow>& rows) {
  TableScenario s{nullptr, nullptr, GeoPoint(-37.8000, 144.9500), GeoPoint(-37.8136, 144.9631),
                  at("2026-03-02T08:30:00Z")};
  std::vector<ParkingLot> lots;
  std::vector<FareSchedule> schedules;
  std::vector<ParkingEvent> events;
  std::vector<TableRouter::Entry> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    // Spread the lots on distinct bearings at the exact walk distance.
    const double bearing = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(rows.size()) + 0.3;
    const GeoPoint where = offset(s.destination, r.objectives.walk_km * 1000.0, bearing);
    const std::string bay = "B" + r.lot_id;
    const std::string fare_id = "F" + r.lot_id;
    lots.push_back(make_lot(r.lot_id, {ParkingBay{bay, where, "2P"}}, fare_id));
    schedules.emplace_back(fare_id, std::vector<FareSegment>{{{0, 1, 2, 3, 4, 5, 6}, 0, 1440, r.objectives.fare}});
    entries.push_back({where, r.drive_minutes, r.walk_minutes});
    const auto busy = std::chrono::seconds(std::lround((1.0 - r.objectives.likelihood) * s.tau_minutes * 60.0));
    if (busy.count() > 0) events.emplace_back(bay, where, s.arrive, s.arrive + busy, "2P");
    // Outside the window: must not count.
    events.emplace_back(bay, where, s.arrive - std::chrono::hours(2), s.arrive - std::chrono::hours(1), "2P");
  }
  s.snapshot = std::make_shared<const Snapshot>(
      Snapshot{EventStore(std::move(events)), LotDB(std::move(lots)), FareBook(std::move(schedules))});
  s.router = std::make_shared<const TableRouter>(std::move(entries));
  return s;
}

ObjectiveVector random_vector(std::mt19937_64& rng, bool coarse) {
  if (coarse) {
    std::uniform_int_distribution<int> g(0, 6);
    return {static_cast<double>(g(rng)) * 5.0, g(rng) * 0.25, g(rng) * 0.5, g(rng) / 6.0};
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng) * 60.0, u(rng) * 3.0, u(rng) * 8.0, u(rng)};
}

std::vector<Candidate> random_candidates(std::mt19937_64& rng, std::size_t n, bool coarse) {
  std::vector<Candidate> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "L%04zu", i);
    out.push_back({id, random_vector(rng, coarse)});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<ParkingBay> random_bays(std::mt19937_64& rng, std::size_t n) {
  static const char* kLabels[] = {"1P", "2P", "LZ"};
  std::uniform_real_distribution<double> dlat(-0.0015, 0.0015);
  std::uniform_real_distribution<double> dlon(-0.0020, 0.0020);
  std::uniform_int_distribution<int> label(0, 2);
  std::vector<ParkingBay> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"bay" + std::to_string(1000 + i), GeoPoint(-37.81 + dlat(rng), 144.96 + dlon(rng)),
                   kLabels[label(rng)]});
  }
  return out;
}

std::vector<ParkingEvent> random_events(std::mt19937_64& rng, const std::vector<ParkingBay>& bays,
                                        Timestamp t0, long span_s, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, bays.size() - 1);
  std::uniform_int_distribution<long> start(-span_s / 4, span_s);
  std::uniform_int_distribution<long> length(0, span_s / 2);
  std::bernoulli_distribution blip(0.1);
  std::vector<ParkingEvent> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = bays[pick(rng)];
    const auto a = t0 + std::chrono::seconds(start(rng));
    const auto d = a + std::chrono::seconds(blip(rng) ? 0 : length(rng));
    out.emplace_back(b.bay_id, b.location, a, d, b.restriction);
  }
  return out;
}

}  // namespace moparker::fixture
