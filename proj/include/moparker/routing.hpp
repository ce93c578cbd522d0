// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "moparker/error.hpp"
#include "moparker/geo.hpp"

namespace moparker {

struct Leg {
  TravelMode mode = TravelMode::Drive;
  std::vector<GeoPoint> path;  // starts at the origin, ends at the target
  double minutes = 0.0;
  double meters = 0.0;
};

enum class RouterKind { Analytic, External };

const char* to_string(RouterKind kind);

/// Produces one leg between two points or throws RoutingError.
class Router {
 public:
  virtual ~Router() = default;
  virtual RouterKind kind() const noexcept = 0;
  virtual Leg route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const = 0;
};

/// Straight-line legs timed with a SpeedModel. Never fails.
class AnalyticRouter final : public Router {
 public:
  explicit AnalyticRouter(SpeedModel speeds = {}) : speeds_(speeds) {}

  RouterKind kind() const noexcept override { return RouterKind::Analytic; }
  Leg route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const override;
  const SpeedModel& speeds() const noexcept { return speeds_; }

 private:
  SpeedModel speeds_;
};

struct OsrmConfig {
  std::string base_url;  // e.g. http://localhost:5000
  std::string drive_profile = "driving";
  std::string walk_profile = "foot";
  double timeout_seconds = 2.0;
};

/// Client for an OSRM-compatible `/route/v1/{profile}/{lon,lat;lon,lat}`
/// endpoint. Any transport error, timeout or non-Ok answer is a RoutingError.
class OsrmRouter final : public Router {
 public:
  explicit OsrmRouter(OsrmConfig config);

  RouterKind kind() const noexcept override { return RouterKind::External; }
  Leg route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const override;

 private:
  OsrmConfig config_;
};

/// Per-request router: memoizes legs and falls back to `fallback` when the
/// primary router fails, remembering that it did. Not safe for concurrent use;
/// create one per request.
class RoutingSession final : public Router {
 public:
  RoutingSession(const Router& primary, const Router& fallback)
      : primary_(primary), fallback_(fallback) {}

  RouterKind kind() const noexcept override { return primary_.kind(); }
  Leg route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const override;
  bool degraded() const noexcept { return degraded_; }

 private:
  using Key = std::tuple<double, double, double, double, int>;
  const Router& primary_;
  const Router& fallback_;
  mutable std::map<Key, Leg> cache_;
  mutable bool degraded_ = false;
};

}  // namespace moparker
