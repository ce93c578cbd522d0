// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/time.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <optional>

#include "moparker/error.hpp"

namespace moparker {

namespace {

std::mutex& tz_mutex() {
  static std::mutex m;
  return m;
}

bool is_utc_name(const std::string& name) {
  return name.empty() || name == "UTC" || name == "Etc/UTC" || name == "GMT" || name == "Z";
}

std::filesystem::path zoneinfo_dir() {
  if (const char* dir = std::getenv("TZDIR"); dir != nullptr && *dir != '\0') return dir;
  return "/usr/share/zoneinfo";
}

// Switches TZ for the lifetime of the guard; caller holds tz_mutex().
class ScopedTz {
 public:
  explicit ScopedTz(const std::string& name) {
    if (const char* prev = std::getenv("TZ"); prev != nullptr) previous_ = prev;
    ::setenv("TZ", name.c_str(), 1);
    ::tzset();
  }
  ~ScopedTz() {
    if (previous_) {
      ::setenv("TZ", previous_->c_str(), 1);
    } else {
      ::unsetenv("TZ");
    }
    ::tzset();
  }
  ScopedTz(const ScopedTz&) = delete;
  ScopedTz& operator=(const ScopedTz&) = delete;

 private:
  std::optional<std::string> previous_;
};

std::tm to_tm(std::chrono::local_seconds local) {
  using namespace std::chrono;
  const auto day = floor<days>(local);
  const year_month_day ymd{day};
  const hh_mm_ss hms{local - day};
  std::tm tm{};
  tm.tm_year = static_cast<int>(ymd.year()) - 1900;
  tm.tm_mon = static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
  tm.tm_mday = static_cast<int>(static_cast<unsigned>(ymd.day()));
  tm.tm_hour = static_cast<int>(hms.hours().count());
  tm.tm_min = static_cast<int>(hms.minutes().count());
  tm.tm_sec = static_cast<int>(hms.seconds().count());
  tm.tm_isdst = -1;
  return tm;
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  void advance() { ++pos_; }

  std::optional<int> digits(std::size_t count) {
    if (pos_ + count > s_.size()) return std::nullopt;
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      value = value * 10 + (c - '0');
    }
    pos_ += count;
    return value;
  }

  bool expect(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TimeZone::TimeZone(std::string name) : name_(std::move(name)), utc_(is_utc_name(name_)) {
  if (utc_) {
    if (name_.empty()) name_ = "UTC";
    return;
  }
  const auto rel = std::filesystem::path(name_);
  std::error_code ec;
  if (name_.find("..") != std::string::npos || rel.is_absolute() ||
      !std::filesystem::is_regular_file(zoneinfo_dir() / rel, ec)) {
    throw ConfigError("unknown time zone: " + name_);
  }
}

Timestamp TimeZone::to_utc(std::chrono::local_seconds local) const {
  using namespace std::chrono;
  if (utc_) return Timestamp{local.time_since_epoch()};
  std::tm tm = to_tm(local);
  std::time_t t;
  {
    std::lock_guard lock(tz_mutex());
    ScopedTz scoped(name_);
    t = std::mktime(&tm);
  }
  if (t == static_cast<std::time_t>(-1)) {
    throw ValidationError("local time not representable in zone " + name_);
  }
  return Timestamp{seconds{t}};
}

std::chrono::local_seconds TimeZone::to_local(Timestamp t) const {
  using namespace std::chrono;
  if (utc_) return local_seconds{t.time_since_epoch()};
  const std::time_t raw = static_cast<std::time_t>(t.time_since_epoch().count());
  std::tm tm{};
  {
    std::lock_guard lock(tz_mutex());
    ScopedTz scoped(name_);
    if (::localtime_r(&raw, &tm) == nullptr) {
      throw ValidationError("instant not representable in zone " + name_);
    }
  }
  return local_seconds{seconds{t.time_since_epoch().count() + tm.tm_gmtoff}};
}

Timestamp parse_iso8601(std::string_view text, const TimeZone& zone) {
  using namespace std::chrono;
  const std::string_view s = trim(text);
  const auto fail = [&]() -> Timestamp {
    throw ValidationError("bad timestamp: '" + std::string(s) + "'");
  };
  Cursor c(s);
  const auto y = c.digits(4);
  if (!y || !c.expect('-')) return fail();
  const auto mo = c.digits(2);
  if (!mo || !c.expect('-')) return fail();
  const auto d = c.digits(2);
  if (!d) return fail();
  if (!(c.expect('T') || c.expect(' ') || c.expect('t'))) return fail();
  const auto h = c.digits(2);
  if (!h || !c.expect(':')) return fail();
  const auto mi = c.digits(2);
  if (!mi) return fail();
  int sec = 0;
  if (c.expect(':')) {
    const auto ss = c.digits(2);
    if (!ss) return fail();
    sec = *ss;
    if (c.expect('.') || c.expect(',')) {
      bool any = false;
      while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        c.advance();
        any = true;
      }
      if (!any) return fail();
    }
  }
  std::optional<int> offset_seconds;
  if (c.expect('Z') || c.expect('z')) {
    offset_seconds = 0;
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.peek() == '-' ? -1 : 1;
    c.advance();
    const auto oh = c.digits(2);
    if (!oh) return fail();
    int om = 0;
    if (c.expect(':')) {
      const auto m2 = c.digits(2);
      if (!m2) return fail();
      om = *m2;
    } else if (!c.done()) {
      const auto m2 = c.digits(2);
      if (!m2) return fail();
      om = *m2;
    }
    if (*oh > 23 || om > 59) return fail();
    offset_seconds = sign * (*oh * 3600 + om * 60);
  }
  if (!c.done()) return fail();

  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || *h > 23 || *mi > 59 || sec > 59) return fail();
  const auto wall = local_days{ymd} + hours{*h} + minutes{*mi} + seconds{sec};
  if (offset_seconds) {
    return Timestamp{wall.time_since_epoch() - seconds{*offset_seconds}};
  }
  return zone.to_utc(wall);
}

std::string format_iso8601_utc(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

TimeWindow::TimeWindow(Timestamp start, double length_minutes)
    : start_(start), length_minutes_(length_minutes) {
  if (!(length_minutes > 0.0) || !std::isfinite(length_minutes)) {
    throw ValidationError("time window length must be > 0 minutes");
  }
}

double TimeWindow::start_seconds() const noexcept {
  return static_cast<double>(start_.time_since_epoch().count());
}

double TimeWindow::end_seconds() const noexcept { return start_seconds() + length_minutes_ * 60.0; }

}  // namespace moparker
