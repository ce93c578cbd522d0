// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used to check the library.

#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "moparker/ingest.hpp"
#include "moparker/lots.hpp"
#include "moparker/pareto.hpp"

namespace moparker::oracle {

/// Great-circle distance through the chord-length form
/// 2R asin(|p - q| / 2) on the unit sphere.
double chord_distance(const GeoPoint& a, const GeoPoint& b);

/// Partition of bay ids: connected components over the full O(n^2) edge set.
std::set<std::set<std::string>> brute_partition(const std::vector<ParkingBay>& bays, double d_max);

/// Occupied seconds by marking every whole second of [begin, end).
long bitmap_occupied_seconds(const std::vector<ParkingEvent>& events, long begin, long end);

/// Crowding distances by re-running the published pseudo-code step by step.
std::map<std::string, double> algorithm1(std::vector<Candidate> s);

/// Plain pairwise dominance on (T, W, F, -L).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Pareto set by definition, returned as sorted lot ids.
std::vector<std::string> front_ids(const std::vector<Candidate>& cs);

/// Ranked epsilon thinning of the Pareto set, recomputed from scratch:
/// members are considered best normalized sum first and dropped when an
/// earlier kept-or-dropped member epsilon-covers them.
std::vector<std::string> epsilon_front_ids(const std::vector<Candidate>& cs, double eps);

/// Events at a bay intersecting [begin, end) by a linear scan.
std::vector<ParkingEvent> scan_query(const std::vector<ParkingEvent>& events, const std::string& bay,
                                     double begin, double end);

}  // namespace moparker::oracle
