// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moparker/geo.hpp"
#include "moparker/ingest.hpp"

namespace moparker {

struct ParkingBay {
  std::string bay_id;
  GeoPoint location;
  std::string restriction;

  friend bool operator==(const ParkingBay&, const ParkingBay&) = default;
};

/// A cluster of bays sharing one restriction label; the unit of recommendation.
struct ParkingLot {
  std::string lot_id;
  std::vector<ParkingBay> bays;  // sorted by bay_id, never empty
  GeoPoint centroid;
  std::string restriction;
  std::string fare_schedule_id;

  std::size_t bay_count() const noexcept { return bays.size(); }

  friend bool operator==(const ParkingLot&, const ParkingLot&) = default;
};

/// Builds a lot from member bays: sorts them, checks the shared restriction and
/// sets the centroid to the arithmetic mean of member coordinates.
/// Throws ValidationError on an empty bay list or mixed restrictions.
ParkingLot make_lot(std::string lot_id, std::vector<ParkingBay> bays, std::string fare_schedule_id);

inline constexpr double kDefaultMaxBayGapMeters = 25.0;

/// Single-link clustering: lots are the connected components of the graph
/// joining two bays when they are within d_max_meters and share a restriction.
///
/// Lots are ordered by their smallest bay_id and numbered L0001, L0002, ...,
/// so the result does not depend on input order. fare_schedule_id defaults to
/// the restriction label. Throws ValidationError on d_max <= 0 or duplicate bay ids.
std::vector<ParkingLot> cluster_bays(std::span<const ParkingBay> bays, double d_max_meters);

/// One bay per distinct bay_id; location and restriction come from the bay's
/// earliest event.
std::vector<ParkingBay> bays_from_events(const EventStore& store);

/// Immutable lot database with a latitude-sorted index for radius queries.
class LotDB {
 public:
  LotDB() = default;
  explicit LotDB(std::vector<ParkingLot> lots);

  /// Lots ordered by lot_id.
  std::span<const ParkingLot> lots() const noexcept { return lots_; }
  const ParkingLot* find(std::string_view lot_id) const;
  std::size_t size() const noexcept { return lots_.size(); }
  std::size_t bay_count() const noexcept;

  /// Lots whose centroid lies within radius_meters of `point`, nearest first,
  /// ties by lot_id.
  std::vector<const ParkingLot*> nearby(const GeoPoint& point, double radius_meters) const;

 private:
  std::vector<ParkingLot> lots_;
  std::vector<std::size_t> by_lat_;
};

inline std::vector<const ParkingLot*> nearby_lots(const LotDB& db, const GeoPoint& point,
                                                  double radius_meters) {
  return db.nearby(point, radius_meters);
}

/// Lot database document: JSON array of
/// `{lot_id, restriction, centroid:{lat,lon}, fare_schedule_id, bays:[{bay_id,lat,lon,restriction}]}`.
std::string lots_to_json(std::span<const ParkingLot> lots, int indent = 2);
std::vector<ParkingLot> lots_from_json(std::string_view text);
LotDB load_lot_db(const std::filesystem::path& path);
void save_lots(const std::filesystem::path& path, std::span<const ParkingLot> lots);

}  // namespace moparker
