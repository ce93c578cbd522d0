// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moparker/time.hpp"

namespace moparker {

/// Days are numbered 0 = Monday ... 6 = Sunday.
struct FareSegment {
  std::vector<int> days;
  int start_minute = 0;  // minute of day, inclusive
  int end_minute = 0;    // minute of day, exclusive, up to 1440
  double rate_per_hour = 0.0;
};

/// Time-of-week tariff in the schedule's local zone.
///
/// Every day that appears in some segment must be covered from 00:00 to 24:00
/// by non-overlapping segments. Days that appear in no segment are free.
class FareSchedule {
 public:
  /// Throws ConfigError on overlapping or incomplete day coverage, negative
  /// rates, out-of-range minutes or days, or a negative cap.
  FareSchedule(std::string schedule_id, std::vector<FareSegment> segments,
               std::optional<double> cap = std::nullopt, TimeZone zone = TimeZone("UTC"));

  /// A schedule with no segments: every stay costs 0.
  static FareSchedule free(std::string schedule_id);

  const std::string& id() const noexcept { return id_; }
  const std::vector<FareSegment>& segments() const noexcept { return segments_; }
  std::optional<double> cap() const noexcept { return cap_; }
  const TimeZone& zone() const noexcept { return zone_; }

  /// Integral of the hourly rate over [start, start + duration), pro-rated to
  /// the second, then limited by the cap. Throws ValidationError on duration <= 0.
  double price(Timestamp start, double duration_minutes) const;

 private:
  struct Span {
    int start_minute;
    int end_minute;
    double rate_per_hour;
  };

  std::string id_;
  std::vector<FareSegment> segments_;
  std::optional<double> cap_;
  TimeZone zone_;
  std::array<std::vector<Span>, 7> by_day_;
};

/// Fare schedules keyed by schedule_id.
class FareBook {
 public:
  FareBook() = default;
  explicit FareBook(std::vector<FareSchedule> schedules);

  const FareSchedule* find(std::string_view schedule_id) const;
  /// Throws ConfigError when the schedule is missing.
  const FareSchedule& at(std::string_view schedule_id) const;
  std::size_t size() const noexcept { return schedules_.size(); }

 private:
  std::map<std::string, FareSchedule, std::less<>> schedules_;
};

/// Fare document: a JSON object keyed by schedule_id, each value
/// `{"timezone": "...", "cap": number|null, "segments": [{"days": ["Mon", ...],
/// "start": "HH:MM", "end": "HH:MM", "rate_per_hour": number}]}`.
/// Days may also be given as "Mon-Fri", "daily", or integers 0 (Monday) to 6.
FareBook fares_from_json(std::string_view text);
FareBook load_fare_book(const std::filesystem::path& path);

}  // namespace moparker
