// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace moparker {

/// Absolute instant, UTC, second resolution.
using Timestamp = std::chrono::sys_seconds;

/// IANA time zone used to interpret local wall-clock times.
///
/// Conversion goes through the C library's TZ database (the standard library
/// shipped with the toolchain has no chrono tzdb). All calls are serialized on
/// a process-wide mutex because the C API works on global state.
class TimeZone {
 public:
  /// Throws ConfigError if the zone is unknown.
  explicit TimeZone(std::string name = "UTC");

  const std::string& name() const noexcept { return name_; }
  bool is_utc() const noexcept { return utc_; }

  /// Local wall-clock seconds (as if UTC) to the absolute instant.
  Timestamp to_utc(std::chrono::local_seconds local) const;
  /// Absolute instant to local wall-clock seconds.
  std::chrono::local_seconds to_local(Timestamp t) const;

 private:
  std::string name_;
  bool utc_ = true;
};

/// Parses ISO-8601 date-time: `YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|±HH[:MM]]`.
/// A string with an explicit offset or `Z` is absolute; otherwise it is local
/// time in `zone`. Fractional seconds are truncated. Throws ValidationError.
Timestamp parse_iso8601(std::string_view text, const TimeZone& zone);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601_utc(Timestamp t);

/// Half-open interval [start, start + length) with length given in minutes.
class TimeWindow {
 public:
  /// Throws ValidationError unless length_minutes > 0.
  TimeWindow(Timestamp start, double length_minutes);

  Timestamp start() const noexcept { return start_; }
  double length_minutes() const noexcept { return length_minutes_; }
  /// Start and end as seconds since the epoch.
  double start_seconds() const noexcept;
  double end_seconds() const noexcept;

 private:
  Timestamp start_;
  double length_minutes_;
};

}  // namespace moparker
