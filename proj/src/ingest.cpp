// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <tuple>

#include "moparker/csv.hpp"
#include "moparker/error.hpp"

namespace moparker {

namespace {

constexpr std::array<std::string_view, 6> kColumns = {"bay_id",  "lat",       "lon",
                                                      "arrival", "departure", "restriction"};

std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void check_header(const csv::Record& header) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    const auto& cols = header.fields;
    if (std::find(cols.begin(), cols.end(), kColumns[i]) == cols.end()) {
      throw SchemaError("event log header is missing column '" + std::string(kColumns[i]) + "'");
    }
  }
  if (header.fields.size() != kColumns.size() ||
      !std::equal(kColumns.begin(), kColumns.end(), header.fields.begin())) {
    throw SchemaError("event log header must be exactly '" + std::string(kEventCsvHeader) + "'");
  }
}

// Returns the reject reason, or nullopt when the row was accepted into `out`.
std::optional<std::string> parse_row(const csv::Record& rec, const TimeZone& zone,
                                     std::vector<ParkingEvent>& out) {
  const auto& f = rec.fields;
  if (f.size() < kColumns.size()) {
    return "missing field '" + std::string(kColumns[f.size()]) + "'";
  }
  if (f.size() > kColumns.size()) return std::string("too many fields");
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (f[i].empty()) return "missing field '" + std::string(kColumns[i]) + "'";
  }
  const auto lat = parse_double(f[1]);
  const auto lon = parse_double(f[2]);
  if (!lat || !lon) return std::string("bad coordinate");
  if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
    return std::string("out-of-range coordinates");
  }
  Timestamp arrival, departure;
  try {
    arrival = parse_iso8601(f[3], zone);
  } catch (const ValidationError&) {
    return std::string("bad timestamp 'arrival'");
  }
  try {
    departure = parse_iso8601(f[4], zone);
  } catch (const ValidationError&) {
    return std::string("bad timestamp 'departure'");
  }
  if (departure < arrival) return std::string("negative duration");
  out.emplace_back(f[0], GeoPoint(*lat, *lon), arrival, departure, f[5]);
  return std::nullopt;
}

}  // namespace

ParkingEvent::ParkingEvent(std::string bay_id_, GeoPoint location_, Timestamp arrival_,
                           Timestamp departure_, std::string restriction_)
    : bay_id(std::move(bay_id_)),
      location(location_),
      arrival(arrival_),
      departure(departure_),
      restriction(std::move(restriction_)) {
  if (bay_id.empty()) throw ValidationError("bay_id must be non-empty");
  if (departure < arrival) throw ValidationError("negative duration");
}

IngestResult parse_events(std::istream& in, const TimeZone& zone) {
  if (!in) throw IoError("event stream is not readable");
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header) throw SchemaError("event log is empty: header row required");
  check_header(*header);

  IngestResult result;
  while (const auto rec = reader.next()) {
    if (auto reason = parse_row(*rec, zone, result.events)) {
      ++result.report.rejected;
      result.report.reject_reasons.emplace_back(rec->line, std::move(*reason));
    } else {
      ++result.report.accepted;
    }
  }
  return result;
}

IngestResult parse_events_file(const std::filesystem::path& path, const TimeZone& zone) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open event log: " + path.string());
  return parse_events(in, zone);
}

void write_events_csv(std::ostream& out, std::span<const ParkingEvent> events) {
  out << kEventCsvHeader << '\n';
  for (const auto& e : events) {
    csv::write_row(out, {e.bay_id, format_double(e.location.lat()), format_double(e.location.lon()),
                         format_iso8601_utc(e.arrival), format_iso8601_utc(e.departure),
                         e.restriction});
  }
}

EventStore::EventStore(std::vector<ParkingEvent> events) {
  count_ = events.size();
  if (!events.empty()) {
    earliest_ = events.front().arrival;
    latest_ = events.front().departure;
  }
  for (auto& e : events) {
    if (e.departure < e.arrival) throw ValidationError("negative duration at bay " + e.bay_id);
    earliest_ = std::min(earliest_, e.arrival);
    latest_ = std::max(latest_, e.departure);
    auto& bay = bays_[e.bay_id];
    bay.longest_seconds = std::max<std::int64_t>(bay.longest_seconds, e.duration().count());
    bay.events.push_back(std::move(e));
  }
  for (auto& [id, bay] : bays_) {
    std::stable_sort(bay.events.begin(), bay.events.end(), [](const auto& a, const auto& b) {
      return std::tie(a.arrival, a.departure) < std::tie(b.arrival, b.departure);
    });
  }
}

std::vector<ParkingEvent> EventStore::query(std::string_view bay_id, double begin_seconds,
                                            double end_seconds) const {
  std::vector<ParkingEvent> hits;
  const auto it = bays_.find(bay_id);
  if (it == bays_.end() || !(end_seconds > begin_seconds)) return hits;
  const auto& events = it->second.events;
  // No event arriving before this bound can reach the window.
  const double lower = begin_seconds - static_cast<double>(it->second.longest_seconds);
  auto first = std::lower_bound(events.begin(), events.end(), lower, [](const auto& e, double t) {
    return static_cast<double>(e.arrival.time_since_epoch().count()) < t;
  });
  for (auto e = first; e != events.end(); ++e) {
    const auto a = static_cast<double>(e->arrival.time_since_epoch().count());
    const auto d = static_cast<double>(e->departure.time_since_epoch().count());
    if (a >= end_seconds) break;
    const bool hit = (a == d) ? (a >= begin_seconds) : (d > begin_seconds);
    if (hit) hits.push_back(*e);
  }
  return hits;
}

std::vector<ParkingEvent> EventStore::query(std::string_view bay_id,
                                            const TimeWindow& window) const {
  return query(bay_id, window.start_seconds(), window.end_seconds());
}

std::span<const ParkingEvent> EventStore::events_for(std::string_view bay_id) const {
  const auto it = bays_.find(bay_id);
  if (it == bays_.end()) return {};
  return it->second.events;
}

std::vector<std::string> EventStore::bay_ids() const {
  std::vector<std::string> ids;
  ids.reserve(bays_.size());
  for (const auto& [id, bay] : bays_) ids.push_back(id);
  return ids;
}

std::vector<ParkingEvent> EventStore::all() const {
  std::vector<ParkingEvent> out;
  out.reserve(count_);
  for (const auto& [id, bay] : bays_) out.insert(out.end(), bay.events.begin(), bay.events.end());
  return out;
}

EventStore load_event_store(const std::filesystem::path& path) {
  auto parsed = parse_events_file(path, TimeZone("UTC"));
  if (parsed.report.rejected != 0) {
    const auto& [line, reason] = parsed.report.reject_reasons.front();
    throw SchemaError("event store " + path.string() + " line " + std::to_string(line) + ": " +
                      reason);
  }
  return EventStore(std::move(parsed.events));
}

void save_event_store(const std::filesystem::path& path, const EventStore& store) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write event store: " + path.string());
  const auto events = store.all();
  write_events_csv(out, events);
  if (!out) throw IoError("failed writing event store: " + path.string());
}

}  // namespace moparker
