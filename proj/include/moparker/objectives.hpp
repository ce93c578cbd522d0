// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "moparker/fares.hpp"
#include "moparker/geo.hpp"
#include "moparker/ingest.hpp"
#include "moparker/lots.hpp"
#include "moparker/routing.hpp"
#include "moparker/time.hpp"

namespace moparker {

/// A driver's request: where from, where to, when, for how long, and how the
/// trade-off front is trimmed.
struct Query {
  GeoPoint source;
  GeoPoint destination;
  TimeWindow arrival_window;        // availability is assessed over this window
  double parking_minutes = 60.0;    // stay length used for the fare
  double likelihood_threshold = 0.7;
  double epsilon = 0.01;
  std::size_t top_k = 5;
};

/// Throws ValidationError unless parking_minutes > 0, threshold in [0, 1],
/// epsilon >= 0 and top_k >= 1.
void validate(const Query& q);

/// Travel time (min), walk distance (km), fare ($) and availability likelihood.
/// T, W and F are minimized; L is maximized.
struct ObjectiveVector {
  double travel_minutes = 0.0;
  double walk_km = 0.0;
  double fare = 0.0;
  double likelihood = 1.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Throws ValidationError unless T, W, F >= 0 and L in [0, 1].
void validate(const ObjectiveVector& v);

/// Drive leg source -> lot centroid plus walk leg centroid -> destination.
/// Router failures propagate as RoutingError naming the failing leg.
double total_travel_time(const Query& q, const ParkingLot& lot, const Router& router);

/// Great-circle distance from the lot centroid to the destination in km (1 m precision).
double walk_distance(const Query& q, const ParkingLot& lot);

/// Price of a stay of q.parking_minutes starting at the arrival window start.
/// Throws ConfigError when the lot's schedule is missing from `fares`.
double fare(const Query& q, const ParkingLot& lot, const FareBook& fares);

ObjectiveVector objective_vector(const Query& q, const ParkingLot& lot, const EventStore& store,
                                 const FareBook& fares, const Router& router);

}  // namespace moparker
