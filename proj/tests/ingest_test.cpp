// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "moparker/csv.hpp"
#include "moparker/error.hpp"
#include "moparker/ingest.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace moparker {
namespace {

using fixture::at;
using std::chrono::minutes;

IngestResult parse(const std::string& text, const TimeZone& zone = TimeZone()) {
  std::istringstream in(text);
  return parse_events(in, zone);
}

const std::string kHeader = "bay_id,lat,lon,arrival,departure,restriction\n";

TEST(Csv, QuotingAndLines) {
  std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\r\n\"multi\nline\",x,\n");
  csv::Reader r(in);
  auto rec = r.next();
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->fields, (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(rec->line, 1u);
  rec = r.next();
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->fields, (std::vector<std::string>{"multi\nline", "x", ""}));
  EXPECT_EQ(rec->line, 3u);
  EXPECT_FALSE(r.next());
}

TEST(Csv, UnterminatedQuote) {
  std::istringstream in("a,\"open\n");
  csv::Reader r(in);
  EXPECT_THROW(r.next(), SchemaError);
}

TEST(Csv, EscapeRoundTrip) {
  const std::vector<std::string> row{"plain", "with,comma", "q\"uote", "line\nbreak", ""};
  std::ostringstream out;
  csv::write_row(out, row);
  std::istringstream in(out.str());
  csv::Reader r(in);
  EXPECT_EQ(r.next()->fields, row);
  EXPECT_EQ(csv::escape("plain"), "plain");
}

TEST(ParseEvents, EmptyBody) {
  const auto r = parse(kHeader);
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.report.accepted, 0u);
  EXPECT_EQ(r.report.rejected, 0u);
}

TEST(ParseEvents, HeaderErrors) {
  try {
    parse("bay_id,lat,lon,arrival,restriction\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("departure"), std::string::npos);
  }
  EXPECT_THROW(parse(""), SchemaError);
  EXPECT_THROW(parse("lat,bay_id,lon,arrival,departure,restriction\n"), SchemaError);
}

TEST(ParseEvents, TenRowFixtureWithTwoBad) {
  const std::string text = kHeader +
                           "b1,-37.81,144.96,2026-03-02T08:00:00Z,2026-03-02T08:20:00Z,1P\n"
                           "b1,-37.81,144.96,2026-03-02T09:00:00Z,2026-03-02T09:05:00Z,1P\n"
                           "b2,-37.8101,144.9601,2026-03-02T08:10:00Z,2026-03-02T08:40:00Z,1P\n"
                           "b2,-37.8101,144.9601,2026-03-02T10:00,2026-03-02T10:30,1P\n"
                           "b3,-37.82,144.97,2026-03-02T08:00:00Z,2026-03-02T07:00:00Z,2P\n"
                           "b3,-37.82,144.97,2026-03-02T11:00:00Z,2026-03-02T11:00:00Z,2P\n"
                           "\"b 4\",-37.83,144.98,2026-03-02T08:00:00+11:00,2026-03-02T09:00:00+11:00,\"LZ, loading\"\n"
                           "b5,-37.84,144.99,2026-03-02T12:00:00Z,2026-03-02T12:30:00Z,2P\n"
                           "b6,-37.85,144.95,2026-03-02T12:00:00Z,2026-03-02T13:30:00Z,4P\n"
                           "b7,-37.86,144.94,2026-03-02T12:00:00Z,2026-03-02T12:01:00Z,4P\n";
  const auto r = parse(text);
  EXPECT_EQ(r.report.accepted, 9u);
  EXPECT_EQ(r.report.rejected, 1u);
  ASSERT_EQ(r.report.reject_reasons.size(), 1u);
  EXPECT_EQ(r.report.reject_reasons[0].first, 6u);
  EXPECT_EQ(r.report.reject_reasons[0].second, "negative duration");

  const std::string two_bad = kHeader +
                              "b1,-37.81,144.96,2026-03-02T08:00:00Z,2026-03-02T08:20:00Z,1P\n"
                              "b1,-37.81,144.96,2026-03-02T09:00:00Z,2026-03-02T09:05:00Z,1P\n"
                              "b2,-37.8101,144.9601,2026-03-02T08:10:00Z,2026-03-02T08:40:00Z,1P\n"
                              "b2,-37.8101,144.9601,2026-03-02T10:00,2026-03-02T10:30,1P\n"
                              "b3,-37.82,144.97,not-a-time,2026-03-02T07:00:00Z,2P\n"
                              "b3,-37.82,144.97,2026-03-02T11:00:00Z,2026-03-02T11:00:00Z,2P\n"
                              "b4,-37.83,144.98,2026-03-02T08:00:00Z,2026-03-02T09:00:00Z,LZ\n"
                              "b5,-97.84,144.99,2026-03-02T12:00:00Z,2026-03-02T12:30:00Z,2P\n"
                              "b6,-37.85,144.95,2026-03-02T12:00:00Z,2026-03-02T13:30:00Z,4P\n"
                              "b7,-37.86,144.94,2026-03-02T12:00:00Z,2026-03-02T12:01:00Z,4P\n";
  const auto r2 = parse(two_bad);
  EXPECT_EQ(r2.report.accepted, 8u);
  EXPECT_EQ(r2.report.rejected, 2u);
  ASSERT_EQ(r2.report.reject_reasons.size(), 2u);
  EXPECT_EQ(r2.report.reject_reasons[0], (std::pair<std::size_t, std::string>{6, "bad timestamp 'arrival'"}));
  EXPECT_EQ(r2.report.reject_reasons[1], (std::pair<std::size_t, std::string>{9, "out-of-range coordinates"}));
}

TEST(ParseEvents, RejectReasons) {
  const auto r = parse(kHeader +
                       "b1,-37.81,144.96,2026-03-02T08:00:00Z\n"
                       ",-37.81,144.96,2026-03-02T08:00:00Z,2026-03-02T08:20:00Z,1P\n"
                       "b1,abc,144.96,2026-03-02T08:00:00Z,2026-03-02T08:20:00Z,1P\n"
                       "b1,-37.81,144.96,2026-03-02T08:00:00Z,soon,1P\n"
                       "b1,-37.81,144.96,2026-03-02T08:00:00Z,2026-03-02T08:20:00Z,1P,extra\n");
  EXPECT_EQ(r.report.accepted, 0u);
  ASSERT_EQ(r.report.rejected, 5u);
  const std::vector<std::string> want{"missing field 'departure'", "missing field 'bay_id'", "bad coordinate",
                                      "bad timestamp 'departure'", "too many fields"};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(r.report.reject_reasons[i].second, want[i]);
}

TEST(ParseEvents, LocalTimesConverted) {
  const auto r = parse(kHeader + "b1,-37.81,144.96,2026-07-02 08:00,2026-07-02 08:30,1P\n",
                       TimeZone("Australia/Melbourne"));
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].arrival, at("2026-07-01T22:00:00Z"));
}

TEST(ParseEvents, RoundTripIsNormalized) {
  std::mt19937_64 rng(21);
  const auto bays = fixture::random_bays(rng, 20);
  const auto events = fixture::random_events(rng, bays, at("2026-03-02T00:00:00Z"), 86400, 300);
  const EventStore store(events);
  std::ostringstream once;
  const auto canonical = store.all();
  write_events_csv(once, canonical);
  std::istringstream in(once.str());
  const auto back = parse_events(in, TimeZone());
  EXPECT_EQ(back.report.rejected, 0u);
  EXPECT_EQ(back.events, canonical);
  std::ostringstream twice;
  write_events_csv(twice, back.events);
  EXPECT_EQ(once.str(), twice.str());
}

TEST(ParseEvents, UnreadableFile) {
  EXPECT_THROW(parse_events_file("/nonexistent/events.csv", TimeZone()), IoError);
}

TEST(ParkingEventTest, Invariants) {
  const GeoPoint p(-37.8, 144.9);
  EXPECT_THROW(ParkingEvent("", p, at("2026-01-01T00:00Z"), at("2026-01-01T01:00Z"), "1P"), ValidationError);
  EXPECT_THROW(ParkingEvent("b", p, at("2026-01-01T01:00Z"), at("2026-01-01T00:00Z"), "1P"), ValidationError);
  EXPECT_EQ(ParkingEvent("b", p, at("2026-01-01T01:00Z"), at("2026-01-01T01:00Z"), "1P").duration().count(), 0);
}

TEST(EventStoreTest, QueryBasics) {
  const EventStore empty;
  EXPECT_TRUE(empty.query("b1", TimeWindow(at("2026-03-02T09:10Z"), 30)).empty());
  const GeoPoint p(-37.8, 144.9);
  const EventStore store({ParkingEvent("b1", p, at("2026-03-02T09:00Z"), at("2026-03-02T09:20Z"), "1P")});
  EXPECT_EQ(store.query("b1", TimeWindow(at("2026-03-02T09:10Z"), 30)).size(), 1u);
  EXPECT_TRUE(store.query("b1", TimeWindow(at("2026-03-02T09:20Z"), 30)).empty());
  EXPECT_TRUE(store.query("zz", TimeWindow(at("2026-03-02T09:10Z"), 30)).empty());
}

TEST(EventStoreTest, FiveEventsWindowCoversThree) {
  const GeoPoint p(-37.8, 144.9);
  std::vector<ParkingEvent> ev{
      ParkingEvent("b", p, at("2026-03-02T10:40Z"), at("2026-03-02T10:50Z"), "1P"),
      ParkingEvent("b", p, at("2026-03-02T08:00Z"), at("2026-03-02T08:30Z"), "1P"),
      ParkingEvent("b", p, at("2026-03-02T09:50Z"), at("2026-03-02T10:05Z"), "1P"),
      ParkingEvent("b", p, at("2026-03-02T11:30Z"), at("2026-03-02T12:00Z"), "1P"),
      ParkingEvent("b", p, at("2026-03-02T10:10Z"), at("2026-03-02T10:15Z"), "1P"),
  };
  const EventStore store(ev);
  const auto got = store.query("b", TimeWindow(at("2026-03-02T10:00Z"), 60));
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0].arrival, at("2026-03-02T09:50Z"));
  EXPECT_EQ(got[1].arrival, at("2026-03-02T10:10Z"));
  EXPECT_EQ(got[2].arrival, at("2026-03-02T10:40Z"));
}

TEST(EventStoreTest, MatchesLinearScan) {
  std::mt19937_64 rng(22);
  const auto t0 = at("2026-03-02T00:00:00Z");
  for (int trial = 0; trial < 50; ++trial) {
    const auto bays = fixture::random_bays(rng, 6);
    const auto events = fixture::random_events(rng, bays, t0, 7200, 80);
    const EventStore store(events);
    EXPECT_EQ(store.size(), events.size());
    std::uniform_int_distribution<long> s(-1800, 7200);
    std::uniform_int_distribution<long> len(1, 3600);
    for (int q = 0; q < 20; ++q) {
      const auto& bay = bays[static_cast<std::size_t>(q) % bays.size()].bay_id;
      const double begin = static_cast<double>((t0 + std::chrono::seconds(s(rng))).time_since_epoch().count());
      const double end = begin + static_cast<double>(len(rng));
      auto got = store.query(bay, begin, end);
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end(),
                                 [](const auto& a, const auto& b) { return a.arrival < b.arrival; }));
      auto want = oracle::scan_query(events, bay, begin, end);
      auto key = [](const ParkingEvent& a, const ParkingEvent& b) {
        return std::tie(a.arrival, a.departure) < std::tie(b.arrival, b.departure);
      };
      std::sort(got.begin(), got.end(), key);
      std::sort(want.begin(), want.end(), key);
      EXPECT_EQ(got, want);
    }
  }
}

TEST(EventStoreTest, SaveLoad) {
  std::mt19937_64 rng(23);
  const auto bays = fixture::random_bays(rng, 5);
  const EventStore store(fixture::random_events(rng, bays, at("2026-03-02T00:00:00Z"), 3600, 40));
  const auto path = std::filesystem::temp_directory_path() / "moparker_store_test.csv";
  save_event_store(path, store);
  const auto back = load_event_store(path);
  EXPECT_EQ(back.all(), store.all());
  EXPECT_EQ(back.earliest(), store.earliest());
  EXPECT_EQ(back.latest(), store.latest());
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace moparker
