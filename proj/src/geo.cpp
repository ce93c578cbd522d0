// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "moparker/error.hpp"

namespace moparker {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace

GeoPoint::GeoPoint(double lat, double lon) : lat_(lat), lon_(lon) {
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) {
    throw ValidationError("latitude out of range [-90, 90]: " + std::to_string(lat));
  }
  if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) {
    throw ValidationError("longitude out of range [-180, 180]: " + std::to_string(lon));
  }
}

SpeedModel::SpeedModel(double drive_kmh, double walk_kmh)
    : drive_kmh_(drive_kmh), walk_kmh_(walk_kmh) {
  if (!(drive_kmh > 0.0) || !std::isfinite(drive_kmh)) {
    throw ValidationError("drive speed must be > 0 km/h");
  }
  if (!(walk_kmh > 0.0) || !std::isfinite(walk_kmh)) {
    throw ValidationError("walk speed must be > 0 km/h");
  }
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  if (a == b) return 0.0;
  const double phi1 = radians(a.lat());
  const double phi2 = radians(b.lat());
  const double dphi = phi2 - phi1;
  const double dlambda = radians(b.lon() - a.lon());
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

double minutes_for_distance(double meters, double speed_kmh) {
  if (!(speed_kmh > 0.0) || !std::isfinite(speed_kmh)) {
    throw ValidationError("speed must be > 0 km/h");
  }
  return meters / 1000.0 / speed_kmh * 60.0;
}

double travel_minutes(const GeoPoint& a, const GeoPoint& b, double speed_kmh) {
  return minutes_for_distance(haversine_distance(a, b), speed_kmh);
}

double meters_to_km_rounded(double meters) noexcept { return std::round(meters) / 1000.0; }

}  // namespace moparker
