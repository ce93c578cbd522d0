// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>

namespace moparker {

inline constexpr double kEarthRadiusMeters = 6371000.0;

/// WGS84-style coordinate in decimal degrees. Construction validates bounds.
class GeoPoint {
 public:
  GeoPoint(double lat, double lon);

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lat_;
  double lon_;
};

/// Drive and walk speeds in km/h, both strictly positive.
class SpeedModel {
 public:
  SpeedModel() = default;
  SpeedModel(double drive_kmh, double walk_kmh);

  double drive_kmh() const noexcept { return drive_kmh_; }
  double walk_kmh() const noexcept { return walk_kmh_; }

 private:
  double drive_kmh_ = 30.0;
  double walk_kmh_ = 5.0;
};

/// Great-circle distance on a spherical Earth of radius kEarthRadiusMeters.
double haversine_distance(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Minutes to cover the great-circle distance between a and b at speed_kmh.
/// Throws ValidationError for a non-positive speed.
double travel_minutes(const GeoPoint& a, const GeoPoint& b, double speed_kmh);

/// Same conversion for an already known distance.
double minutes_for_distance(double meters, double speed_kmh);

/// Rounds a distance in meters to whole meters and reports it in km.
double meters_to_km_rounded(double meters) noexcept;

}  // namespace moparker
