// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "moparker/error.hpp"

namespace moparker {

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::size_t run, std::size_t query) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(query)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// Best cost per objective over a candidate set.
std::array<double, 4> optima(std::span<const Candidate> cs) {
  std::array<double, 4> best{};
  best.fill(std::numeric_limits<double>::infinity());
  for (const auto& c : cs) {
    for (std::size_t m = 0; m < kObjectives.size(); ++m) {
      best[m] = std::min(best[m], cost(c.objectives, kObjectives[m]));
    }
  }
  return best;
}

}  // namespace

std::optional<ParkingLot> greedy_recommend(const Query& q, const LotDB& lots, double proximity_meters,
                                           std::uint64_t seed) {
  if (!(proximity_meters > 0.0) || !std::isfinite(proximity_meters)) {
    throw ValidationError("proximity threshold must be > 0 meters");
  }
  const auto in_range = lots.nearby(q.destination, proximity_meters);
  if (in_range.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, in_range.size() - 1);
  return *in_range[pick(rng)];
}

ComparisonReport compare_baseline(std::span<const Query> queries, const LotDB& lots,
                                  const EventStore& store, const FareBook& fares,
                                  const Router& router, std::size_t runs, double proximity_meters,
                                  std::uint64_t seed) {
  ComparisonReport report;
  report.runs = runs;
  report.queries = queries.size();
  std::array<std::size_t, 4> greedy_hits{};
  std::array<std::size_t, 4> engine_hits{};

  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Query& q = queries[qi];
    const auto candidates = evaluate_candidates(q, lots, store, fares, router);
    if (candidates.empty()) continue;
    const auto best = optima(candidates);
    // The engine's output does not depend on the seed.
    const auto front = epsilon_front(candidates, 0.0);
    std::array<bool, 4> engine_attains{};
    for (std::size_t m = 0; m < kObjectives.size(); ++m) {
      engine_attains[m] = std::any_of(front.begin(), front.end(), [&](const Candidate& c) {
        return cost(c.objectives, kObjectives[m]) == best[m];
      });
    }
    for (std::size_t r = 0; r < runs; ++r) {
      for (std::size_t m = 0; m < kObjectives.size(); ++m) engine_hits[m] += engine_attains[m] ? 1 : 0;
      const auto pick = greedy_recommend(q, lots, proximity_meters, stream_seed(seed, r, qi));
      if (!pick) {
        ++report.greedy_empty;
        continue;
      }
      const auto it = std::find_if(candidates.begin(), candidates.end(),
                                   [&](const Candidate& c) { return c.lot_id == pick->lot_id; });
      for (std::size_t m = 0; m < kObjectives.size(); ++m) {
        if (cost(it->objectives, kObjectives[m]) == best[m]) ++greedy_hits[m];
      }
    }
  }
  const double total = static_cast<double>(runs * queries.size());
  if (total > 0.0) {
    for (std::size_t m = 0; m < kObjectives.size(); ++m) {
      report.greedy[m] = static_cast<double>(greedy_hits[m]) / total;
      report.moparker[m] = static_cast<double>(engine_hits[m]) / total;
    }
  }
  return report;
}

}  // namespace moparker
