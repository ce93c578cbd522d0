// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moparker/geo.hpp"
#include "moparker/time.hpp"

namespace moparker {

/// One sensed stay at one bay: [arrival, departure).
struct ParkingEvent {
  /// Throws ValidationError on an empty bay_id or departure < arrival.
  ParkingEvent(std::string bay_id, GeoPoint location, Timestamp arrival, Timestamp departure,
               std::string restriction);

  std::string bay_id;
  GeoPoint location;
  Timestamp arrival;
  Timestamp departure;
  std::string restriction;

  std::chrono::seconds duration() const { return departure - arrival; }

  friend bool operator==(const ParkingEvent&, const ParkingEvent&) = default;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<std::pair<std::size_t, std::string>> reject_reasons;  // (line, reason)
};

struct IngestResult {
  std::vector<ParkingEvent> events;
  IngestReport report;
};

/// Exact header of the event log and of the persisted event store.
inline constexpr std::string_view kEventCsvHeader = "bay_id,lat,lon,arrival,departure,restriction";

/// Parses an event log. Zone-less timestamps are read as local time in `zone`.
/// Malformed rows are rejected and reported; they are never repaired.
/// Throws SchemaError if the header does not match kEventCsvHeader exactly.
IngestResult parse_events(std::istream& in, const TimeZone& zone);
IngestResult parse_events_file(const std::filesystem::path& path, const TimeZone& zone);

/// Writes events in the canonical store form: kEventCsvHeader, UTC timestamps
/// with a `Z` suffix, coordinates with full round-trip precision.
void write_events_csv(std::ostream& out, std::span<const ParkingEvent> events);

/// Immutable per-bay index of events.
class EventStore {
 public:
  EventStore() = default;
  explicit EventStore(std::vector<ParkingEvent> events);

  /// Events at `bay_id` whose [arrival, departure) intersects [begin, end),
  /// ordered by arrival. A zero-length event matches when begin <= arrival < end.
  std::vector<ParkingEvent> query(std::string_view bay_id, double begin_seconds,
                                  double end_seconds) const;
  std::vector<ParkingEvent> query(std::string_view bay_id, const TimeWindow& window) const;

  /// All events of one bay, arrival ordered. Empty for an unknown bay.
  std::span<const ParkingEvent> events_for(std::string_view bay_id) const;

  /// Sorted bay ids with at least one event.
  std::vector<std::string> bay_ids() const;

  /// Canonical order: bay_id, arrival, departure.
  std::vector<ParkingEvent> all() const;

  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  /// Earliest arrival and latest departure; only meaningful when !empty().
  Timestamp earliest() const noexcept { return earliest_; }
  Timestamp latest() const noexcept { return latest_; }

 private:
  struct Bay {
    std::vector<ParkingEvent> events;
    std::int64_t longest_seconds = 0;
  };
  std::map<std::string, Bay, std::less<>> bays_;
  std::size_t count_ = 0;
  Timestamp earliest_{};
  Timestamp latest_{};
};

/// Reads a persisted store (kEventCsvHeader, UTC). Any rejected row is a SchemaError.
EventStore load_event_store(const std::filesystem::path& path);
void save_event_store(const std::filesystem::path& path, const EventStore& store);

/// The canonical `bay_id,window` lookup used by the occupancy module.
inline std::vector<ParkingEvent> query_events(const EventStore& store, std::string_view bay_id,
                                              const TimeWindow& window) {
  return store.query(bay_id, window);
}

}  // namespace moparker
