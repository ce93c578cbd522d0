// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "moparker/error.hpp"
#include "moparker/objectives.hpp"
#include "moparker/occupancy.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace moparker {
namespace {

using fixture::at;
using std::chrono::minutes;

const std::vector<int> kEveryDay{0, 1, 2, 3, 4, 5, 6};

FareSchedule flat(const std::string& id, double rate, std::optional<double> cap = std::nullopt) {
  return FareSchedule(id, {{kEveryDay, 0, 1440, rate}}, cap);
}

TEST(Fares, ProRata) {
  const auto start = at("2026-03-02T10:00Z");  // a Monday
  EXPECT_DOUBLE_EQ(flat("a", 1.2).price(start, 30), 0.6);
  EXPECT_EQ(FareSchedule::free("f").price(start, 600), 0.0);
  // $0/h until 10:30, then $2/h.
  const FareSchedule step("s", {{kEveryDay, 0, 630, 0.0}, {kEveryDay, 630, 1440, 2.0}});
  EXPECT_DOUBLE_EQ(step.price(start, 60), 1.0);
  EXPECT_DOUBLE_EQ(flat("c", 4.0, 5.0).price(start, 180), 5.0);
  EXPECT_THROW(flat("a", 1.0).price(start, 0), ValidationError);
}

TEST(Fares, DaysAcrossMidnightAndZones) {
  // Weekdays $3/h, weekend free.
  const FareSchedule weekdays("w", {{{0, 1, 2, 3, 4}, 0, 1440, 3.0}});
  // Friday 23:00 UTC for two hours: one charged hour.
  EXPECT_DOUBLE_EQ(weekdays.price(at("2026-03-06T23:00Z"), 120), 3.0);
  // The same instant is Saturday 10:00 in Melbourne.
  const FareSchedule mel("m", {{{0, 1, 2, 3, 4}, 0, 1440, 3.0}}, std::nullopt, TimeZone("Australia/Melbourne"));
  EXPECT_EQ(mel.price(at("2026-03-06T23:00Z"), 120), 0.0);
}

TEST(Fares, ValidatesCoverage) {
  EXPECT_THROW(FareSchedule("x", {{{0}, 0, 600, 1.0}}), ConfigError);
  EXPECT_THROW(FareSchedule("x", {{{0}, 0, 800, 1.0}, {{0}, 700, 1440, 1.0}}), ConfigError);
  EXPECT_THROW(FareSchedule("x", {{{0}, 0, 1440, -1.0}}), ConfigError);
  EXPECT_THROW(FareSchedule("x", {{{7}, 0, 1440, 1.0}}), ConfigError);
  EXPECT_THROW(flat("x", 1.0, -2.0), ConfigError);
}

TEST(Fares, MonotoneInDuration) {
  const FareSchedule s("s", {{kEveryDay, 0, 480, 0.0}, {kEveryDay, 480, 1080, 4.5}, {kEveryDay, 1080, 1440, 1.0}}, 20.0);
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> off(0, 7 * 86400);
  std::uniform_real_distribution<double> dur(1, 600);
  for (int i = 0; i < 500; ++i) {
    const auto t = at("2026-03-02T00:00Z") + std::chrono::seconds(off(rng));
    const double a = dur(rng);
    const double b = a + dur(rng);
    EXPECT_LE(s.price(t, a), s.price(t, b) + 1e-12);
  }
}

TEST(Fares, JsonDocument) {
  const auto book = fares_from_json(R"({
    "2P": {"timezone": "Australia/Melbourne", "cap": 12.5, "segments": [
      {"days": "Mon-Fri", "start": "00:00", "end": "07:30", "rate_per_hour": 0},
      {"days": "Mon-Fri", "start": "07:30", "end": "18:30", "rate_per_hour": 4.2},
      {"days": ["Mon", "Tue", "Wed", "Thu", "Fri"], "start": "18:30", "end": "24:00", "rate_per_hour": 0}]},
    "free": {},
    "daily": {"segments": [{"days": "daily", "start": "00:00", "end": "24:00", "rate_per_hour": 1.5}]}
  })");
  EXPECT_EQ(book.size(), 3u);
  EXPECT_EQ(book.at("2P").zone().name(), "Australia/Melbourne");
  EXPECT_EQ(book.at("2P").cap(), 12.5);
  EXPECT_EQ(book.at("free").price(at("2026-03-02T00:00Z"), 60), 0.0);
  EXPECT_DOUBLE_EQ(book.at("daily").price(at("2026-03-07T05:00Z"), 40), 1.0);
  EXPECT_THROW(book.at("missing"), ConfigError);
  EXPECT_THROW(fares_from_json("[]"), ConfigError);
  EXPECT_THROW(fares_from_json(R"({"x": {"segments": [{"days": "Someday", "start": "00:00", "end": "24:00", "rate_per_hour": 1}]}})"),
               ConfigError);
}

struct World {
  ParkingLot lot;
  FareBook fares;
  EventStore store;
};

World world(const GeoPoint& where) {
  return World{make_lot("L1", {{"b1", where, "2P"}}, "2P"), FareBook({flat("2P", 1.2)}), EventStore()};
}

TEST(Objectives, Identities) {
  const GeoPoint dest(-37.8136, 144.9631);
  auto w = world(dest);
  w.fares = FareBook({FareSchedule::free("2P")});
  const Query q{dest, dest, TimeWindow(at("2026-03-02T08:30Z"), 30)};
  const AnalyticRouter router;
  EXPECT_EQ(objective_vector(q, w.lot, w.store, w.fares, router), (ObjectiveVector{0, 0, 0, 1}));
}

TEST(Objectives, TravelTimeIsLegSum) {
  const GeoPoint src(-37.80, 144.95);
  const GeoPoint dest(-37.8136, 144.9631);
  const auto w = world(GeoPoint(-37.8100, 144.9600));
  const Query q{src, dest, TimeWindow(at("2026-03-02T08:30Z"), 30)};
  const AnalyticRouter router;
  const double t = total_travel_time(q, w.lot, router);
  const double drive = travel_minutes(src, w.lot.centroid, 30);
  const double walk = travel_minutes(w.lot.centroid, dest, 5);
  EXPECT_DOUBLE_EQ(t, drive + walk);
  EXPECT_GE(t, walk);
  // Swapping source and destination changes T because walking is slower.
  const Query swapped{dest, src, q.arrival_window};
  EXPECT_NE(total_travel_time(swapped, w.lot, router), t);
  EXPECT_DOUBLE_EQ(total_travel_time(swapped, w.lot, router),
                   travel_minutes(dest, w.lot.centroid, 30) + travel_minutes(w.lot.centroid, src, 5));
}

TEST(Objectives, CaseStudyLegs) {
  const auto rows = fixture::melbourne_case();
  const auto scenario = fixture::table_scenario(rows);
  const auto& lot = *scenario.snapshot->lots.find("172");
  EXPECT_EQ(total_travel_time(scenario.query(), lot, *scenario.router), 14.0);
  EXPECT_EQ(walk_distance(scenario.query(), lot), 0.4);
}

TEST(Objectives, WalkDistanceMatchesOracle) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> j(-0.02, 0.02);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint dest(-37.81 + j(rng), 144.96 + j(rng));
    const auto w = world(GeoPoint(-37.81 + j(rng), 144.96 + j(rng)));
    const Query q{dest, dest, TimeWindow(at("2026-03-02T08:30Z"), 30)};
    EXPECT_NEAR(walk_distance(q, w.lot), oracle::chord_distance(w.lot.centroid, dest) / 1000.0, 0.0005 + 1e-9);
  }
}

TEST(Objectives, RouterFailureNamesLeg) {
  struct Broken final : Router {
    RouterKind kind() const noexcept override { return RouterKind::External; }
    Leg route(const GeoPoint& a, const GeoPoint& b, TravelMode mode) const override {
      if (mode == TravelMode::Walk) throw RoutingError(mode, "no footpath");
      return Leg{mode, {a, b}, 1.0, 0.0};
    }
  };
  const GeoPoint dest(-37.8136, 144.9631);
  const auto w = world(dest);
  const Query q{dest, dest, TimeWindow(at("2026-03-02T08:30Z"), 30)};
  try {
    total_travel_time(q, w.lot, Broken{});
    FAIL();
  } catch (const RoutingError& e) {
    EXPECT_EQ(e.leg(), TravelMode::Walk);
  }
}

TEST(Objectives, MissingScheduleIsConfigError) {
  const GeoPoint dest(-37.8136, 144.9631);
  auto w = world(dest);
  w.fares = FareBook();
  const Query q{dest, dest, TimeWindow(at("2026-03-02T08:30Z"), 30)};
  EXPECT_THROW(fare(q, w.lot, w.fares), ConfigError);
}

TEST(Objectives, VectorEqualsComponents) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> j(-0.01, 0.01);
  const AnalyticRouter router({25, 4.5});
  const auto t0 = at("2026-03-02T08:00Z");
  for (int i = 0; i < 100; ++i) {
    const ParkingBay bay{"b1", GeoPoint(-37.81 + j(rng), 144.96 + j(rng)), "2P"};
    const auto lot = make_lot("L1", {bay}, "2P");
    const EventStore store(fixture::random_events(rng, {bay}, t0, 7200, 5));
    const FareBook fares({flat("2P", 2.5, 4.0)});
    const Query q{GeoPoint(-37.81 + j(rng), 144.96 + j(rng)), GeoPoint(-37.81 + j(rng), 144.96 + j(rng)),
                  TimeWindow(t0 + minutes(30), 30), 90};
    const auto v = objective_vector(q, lot, store, fares, router);
    EXPECT_EQ(v.travel_minutes, total_travel_time(q, lot, router));
    EXPECT_EQ(v.walk_km, walk_distance(q, lot));
    EXPECT_EQ(v.fare, fare(q, lot, fares));
    EXPECT_EQ(v.likelihood, likelihood(lot, store, q.arrival_window));
  }
}

TEST(Objectives, QueryValidation) {
  const GeoPoint p(-37.8, 144.9);
  const TimeWindow w(at("2026-03-02T08:30Z"), 30);
  EXPECT_NO_THROW(validate(Query{p, p, w}));
  EXPECT_THROW(validate(Query{p, p, w, 0}), ValidationError);
  EXPECT_THROW(validate(Query{p, p, w, 60, 1.5}), ValidationError);
  EXPECT_THROW(validate(Query{p, p, w, 60, 0.7, -0.1}), ValidationError);
  EXPECT_THROW(validate(Query{p, p, w, 60, 0.7, 0.01, 0}), ValidationError);
  EXPECT_THROW(validate(ObjectiveVector{-1, 0, 0, 1}), ValidationError);
  EXPECT_THROW(validate(ObjectiveVector{0, 0, 0, 1.1}), ValidationError);
}

}  // namespace
}  // namespace moparker
