// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/objectives.hpp"

#include <cmath>

#include "moparker/error.hpp"
#include "moparker/occupancy.hpp"

namespace moparker {

void validate(const Query& q) {
  if (!(q.parking_minutes > 0.0) || !std::isfinite(q.parking_minutes)) {
    throw ValidationError("parking duration must be > 0 minutes");
  }
  if (!(q.likelihood_threshold >= 0.0 && q.likelihood_threshold <= 1.0)) {
    throw ValidationError("likelihood threshold must be in [0, 1]");
  }
  if (!(q.epsilon >= 0.0) || !std::isfinite(q.epsilon)) {
    throw ValidationError("epsilon must be >= 0");
  }
  if (q.top_k < 1) throw ValidationError("top_k must be >= 1");
}

void validate(const ObjectiveVector& v) {
  const auto nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!nonneg(v.travel_minutes)) throw ValidationError("travel time must be >= 0");
  if (!nonneg(v.walk_km)) throw ValidationError("walk distance must be >= 0");
  if (!nonneg(v.fare)) throw ValidationError("fare must be >= 0");
  if (!(v.likelihood >= 0.0 && v.likelihood <= 1.0)) {
    throw ValidationError("likelihood must be in [0, 1]");
  }
}

double total_travel_time(const Query& q, const ParkingLot& lot, const Router& router) {
  const Leg drive = router.route(q.source, lot.centroid, TravelMode::Drive);
  const Leg walk = router.route(lot.centroid, q.destination, TravelMode::Walk);
  if (!(drive.minutes >= 0.0)) throw RoutingError(TravelMode::Drive, "negative leg time");
  if (!(walk.minutes >= 0.0)) throw RoutingError(TravelMode::Walk, "negative leg time");
  return drive.minutes + walk.minutes;
}

double walk_distance(const Query& q, const ParkingLot& lot) {
  return meters_to_km_rounded(haversine_distance(lot.centroid, q.destination));
}

double fare(const Query& q, const ParkingLot& lot, const FareBook& fares) {
  return fares.at(lot.fare_schedule_id).price(q.arrival_window.start(), q.parking_minutes);
}

ObjectiveVector objective_vector(const Query& q, const ParkingLot& lot, const EventStore& store,
                                 const FareBook& fares, const Router& router) {
  ObjectiveVector v{total_travel_time(q, lot, router), walk_distance(q, lot), fare(q, lot, fares),
                    likelihood(lot, store, q.arrival_window)};
  validate(v);
  return v;
}

}  // namespace moparker
