// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/fares.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moparker/error.hpp"

namespace moparker {

namespace {

using nlohmann::json;

constexpr int kMinutesPerDay = 24 * 60;
constexpr std::array<std::string_view, 7> kDayNames = {"Mon", "Tue", "Wed", "Thu",
                                                       "Fri", "Sat", "Sun"};

int parse_day(std::string_view name, const std::string& where) {
  for (int d = 0; d < 7; ++d) {
    if (name == kDayNames[d]) return d;
  }
  throw ConfigError(where + ": unknown day '" + std::string(name) + "'");
}

std::vector<int> parse_days(const json& j, const std::string& where) {
  std::vector<int> days;
  const auto add_token = [&](std::string_view token) {
    if (token == "daily") {
      for (int d = 0; d < 7; ++d) days.push_back(d);
      return;
    }
    if (const auto dash = token.find('-'); dash != std::string_view::npos) {
      const int from = parse_day(token.substr(0, dash), where);
      const int to = parse_day(token.substr(dash + 1), where);
      for (int d = from;; d = (d + 1) % 7) {
        days.push_back(d);
        if (d == to) break;
      }
      return;
    }
    days.push_back(parse_day(token, where));
  };
  if (j.is_string()) {
    add_token(j.get<std::string>());
  } else if (j.is_array()) {
    for (const auto& d : j) {
      if (d.is_number_integer()) {
        days.push_back(d.get<int>());
      } else if (d.is_string()) {
        add_token(d.get<std::string>());
      } else {
        throw ConfigError(where + ": days must be names or integers");
      }
    }
  } else {
    throw ConfigError(where + ": 'days' must be a string or an array");
  }
  return days;
}

int parse_clock(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": times must be \"HH:MM\" strings");
  const auto s = j.get<std::string>();
  int h = 0;
  int m = 0;
  char colon = 0;
  std::istringstream in(s);
  if (!(in >> h >> colon >> m) || colon != ':' || !in.eof() || h < 0 || m < 0 || m > 59 ||
      h * 60 + m > kMinutesPerDay) {
    throw ConfigError(where + ": bad time '" + s + "'");
  }
  return h * 60 + m;
}

}  // namespace

FareSchedule::FareSchedule(std::string schedule_id, std::vector<FareSegment> segments,
                           std::optional<double> cap, TimeZone zone)
    : id_(std::move(schedule_id)), segments_(std::move(segments)), cap_(cap), zone_(std::move(zone)) {
  if (cap_ && (!(*cap_ >= 0.0) || !std::isfinite(*cap_))) {
    throw ConfigError("fare schedule " + id_ + ": cap must be >= 0");
  }
  for (const auto& seg : segments_) {
    if (!(seg.rate_per_hour >= 0.0) || !std::isfinite(seg.rate_per_hour)) {
      throw ConfigError("fare schedule " + id_ + ": rates must be >= 0");
    }
    if (seg.start_minute < 0 || seg.end_minute > kMinutesPerDay || seg.start_minute >= seg.end_minute) {
      throw ConfigError("fare schedule " + id_ + ": segment must satisfy 00:00 <= start < end <= 24:00");
    }
    if (seg.days.empty()) throw ConfigError("fare schedule " + id_ + ": segment has no days");
    for (const int d : seg.days) {
      if (d < 0 || d > 6) throw ConfigError("fare schedule " + id_ + ": day out of range 0..6");
      by_day_[d].push_back(Span{seg.start_minute, seg.end_minute, seg.rate_per_hour});
    }
  }
  for (int d = 0; d < 7; ++d) {
    auto& spans = by_day_[d];
    if (spans.empty()) continue;
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.start_minute < b.start_minute; });
    int covered = 0;
    for (const auto& s : spans) {
      if (s.start_minute < covered) {
        throw ConfigError("fare schedule " + id_ + ": overlapping segments on " +
                          std::string(kDayNames[d]));
      }
      if (s.start_minute > covered) {
        throw ConfigError("fare schedule " + id_ + ": segments leave a gap on " +
                          std::string(kDayNames[d]));
      }
      covered = s.end_minute;
    }
    if (covered != kMinutesPerDay) {
      throw ConfigError("fare schedule " + id_ + ": segments do not reach 24:00 on " +
                        std::string(kDayNames[d]));
    }
  }
}

FareSchedule FareSchedule::free(std::string schedule_id) {
  return FareSchedule(std::move(schedule_id), {});
}

double FareSchedule::price(Timestamp start, double duration_minutes) const {
  using namespace std::chrono;
  if (!(duration_minutes > 0.0) || !std::isfinite(duration_minutes)) {
    throw ValidationError("parking duration must be > 0 minutes");
  }
  const auto local = zone_.to_local(start);
  const auto local_day = floor<days>(local);
  // Walk forward in local wall-clock seconds measured from local midnight of the start day.
  double t = static_cast<double>((local - local_day).count());
  const double end = t + duration_minutes * 60.0;
  int weekday_index = static_cast<int>(weekday{local_day}.iso_encoding()) - 1;  // 0 = Monday
  double day_origin = 0.0;
  double total = 0.0;
  while (t < end) {
    const double day_end = day_origin + kMinutesPerDay * 60.0;
    const auto& spans = by_day_[weekday_index];
    if (spans.empty()) {
      t = std::min(end, day_end);
    } else {
      const double tod_minutes = (t - day_origin) / 60.0;
      auto it = std::upper_bound(spans.begin(), spans.end(), tod_minutes,
                                 [](double m, const Span& s) { return m < s.end_minute; });
      // Coverage is complete, so a span always contains tod.
      const double seg_end = day_origin + it->end_minute * 60.0;
      const double stop = std::min(end, seg_end);
      total += it->rate_per_hour * ((stop - t) / 3600.0);
      t = stop;
    }
    if (t >= day_end) {
      day_origin = day_end;
      weekday_index = (weekday_index + 1) % 7;
    }
  }
  if (cap_) total = std::min(total, *cap_);
  return total;
}

FareBook::FareBook(std::vector<FareSchedule> schedules) {
  for (auto& s : schedules) {
    auto id = s.id();
    if (!schedules_.emplace(id, std::move(s)).second) {
      throw ConfigError("duplicate fare schedule id: " + id);
    }
  }
}

const FareSchedule* FareBook::find(std::string_view schedule_id) const {
  const auto it = schedules_.find(schedule_id);
  return it == schedules_.end() ? nullptr : &it->second;
}

const FareSchedule& FareBook::at(std::string_view schedule_id) const {
  if (const auto* s = find(schedule_id)) return *s;
  throw ConfigError("missing fare schedule: " + std::string(schedule_id));
}

FareBook fares_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("fare document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("fare document must be an object keyed by schedule_id");
  std::vector<FareSchedule> schedules;
  for (const auto& [id, body] : doc.items()) {
    const std::string where = "fares." + id;
    if (!body.is_object()) throw ConfigError(where + " must be an object");
    std::optional<double> cap;
    if (body.contains("cap") && !body.at("cap").is_null()) {
      if (!body.at("cap").is_number()) throw ConfigError(where + ".cap must be a number");
      cap = body.at("cap").get<double>();
    }
    TimeZone zone("UTC");
    if (body.contains("timezone")) {
      if (!body.at("timezone").is_string()) throw ConfigError(where + ".timezone must be a string");
      zone = TimeZone(body.at("timezone").get<std::string>());
    }
    std::vector<FareSegment> segments;
    if (body.contains("segments")) {
      if (!body.at("segments").is_array()) throw ConfigError(where + ".segments must be an array");
      for (const auto& seg : body.at("segments")) {
        if (!seg.is_object() || !seg.contains("days") || !seg.contains("start") ||
            !seg.contains("end") || !seg.contains("rate_per_hour") ||
            !seg.at("rate_per_hour").is_number()) {
          throw ConfigError(where + ": segment needs days, start, end, rate_per_hour");
        }
        segments.push_back(FareSegment{parse_days(seg.at("days"), where), parse_clock(seg.at("start"), where),
                                       parse_clock(seg.at("end"), where),
                                       seg.at("rate_per_hour").get<double>()});
      }
    }
    schedules.emplace_back(id, std::move(segments), cap, std::move(zone));
  }
  return FareBook(std::move(schedules));
}

FareBook load_fare_book(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open fare document: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return fares_from_json(buf.str());
}

}  // namespace moparker
