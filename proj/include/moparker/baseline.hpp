// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "moparker/pareto.hpp"

namespace moparker {

/// Proximity baseline: a uniformly random lot among those whose centroid lies
/// within proximity_meters of the destination. Seeded and reproducible.
/// Returns nullopt when no lot is in range. Throws ValidationError on proximity <= 0.
std::optional<ParkingLot> greedy_recommend(const Query& q, const LotDB& lots, double proximity_meters,
                                           std::uint64_t seed);

/// Fraction of outputs containing a lot that attains the candidate-set optimum
/// of each objective, indexed like kObjectives.
using ObjectiveProportions = std::array<double, 4>;

struct ComparisonReport {
  std::size_t runs = 0;
  std::size_t queries = 0;
  ObjectiveProportions greedy{};
  ObjectiveProportions moparker{};
  std::size_t greedy_empty = 0;  // (run, query) pairs where no lot was in range
};

/// Runs both policies `runs` times over every query. The engine's output is its
/// Pareto front over all evaluated lots; the greedy output is its single pick.
/// Run r of query i draws from its own stream seeded by (seed, r, i).
ComparisonReport compare_baseline(std::span<const Query> queries, const LotDB& lots,
                                  const EventStore& store, const FareBook& fares,
                                  const Router& router, std::size_t runs, double proximity_meters,
                                  std::uint64_t seed);

}  // namespace moparker
