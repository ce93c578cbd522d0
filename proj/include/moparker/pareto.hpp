// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moparker/objectives.hpp"

namespace moparker {

enum class Objective { TravelTime, WalkDistance, Fare, Likelihood };

inline constexpr std::array<Objective, 4> kObjectives = {
    Objective::TravelTime, Objective::WalkDistance, Objective::Fare, Objective::Likelihood};

const char* to_string(Objective m);
constexpr bool is_maximized(Objective m) { return m == Objective::Likelihood; }
double value(const ObjectiveVector& v, Objective m);
/// The value oriented so that smaller is better (likelihood negated).
double cost(const ObjectiveVector& v, Objective m);

struct Candidate {
  std::string lot_id;
  ObjectiveVector objectives;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// True when `a` is no worse than `b` on every objective and strictly better on one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;
bool dominates(const Candidate& a, const Candidate& b) noexcept;

/// Candidates not dominated by any other, by exhaustive pairwise comparison.
/// Returned in lot_id order.
std::vector<Candidate> naive_front(std::span<const Candidate> candidates);

/// Additive epsilon-dominance on per-objective min-max normalized costs (the
/// normalization range comes from the whole candidate set): `a` eps-dominates
/// `b` when a[m] - eps <= b[m] for all m and a[m] - eps < b[m] for some m.
bool epsilon_dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                       const std::array<double, 4>& ranges, double epsilon) noexcept;

/// Per-objective (max - min) of the costs over the candidate set; 0 when degenerate.
std::array<double, 4> cost_ranges(std::span<const Candidate> candidates) noexcept;

/// Preference order used to break mutual epsilon-dominance: smaller sum of
/// normalized costs first, then smaller lot_id.
double normalized_cost_sum(const ObjectiveVector& v, const std::array<double, 4>& minima,
                           const std::array<double, 4>& ranges) noexcept;

/// Epsilon-thinned Pareto front.
///
/// The Pareto front P is computed first. With eps = 0 the result is exactly P.
/// Otherwise members of P are ranked by the preference order above and a member
/// is dropped when a better-ranked member of P eps-dominates it. The result is
/// a subset of P, never empty for non-empty input, and shrinks as eps grows.
/// Returned in lot_id order. Throws ValidationError on eps < 0.
std::vector<Candidate> epsilon_front(std::span<const Candidate> candidates, double epsilon);

/// Optional hard feasibility bounds applied before crowding.
struct ObjectiveThresholds {
  std::optional<double> max_travel_minutes;
  std::optional<double> max_walk_km;
  std::optional<double> max_fare;
  std::optional<double> min_likelihood;

  bool admits(const ObjectiveVector& v) const noexcept;
};

struct CrowdingResult {
  std::vector<Candidate> retained;          // candidates passing the thresholds
  std::map<std::string, double> distance;   // lot_id -> crowding distance, +inf at boundaries

  bool empty() const noexcept { return retained.empty(); }
};

/// Crowding distance with objective thresholding. Candidates failing a
/// threshold are removed first; an empty `retained` signals that nothing
/// survived. Per objective the survivors are sorted ascending (ties by lot_id),
/// the first and last get +inf, and each interior candidate accumulates
/// (next - previous) / (max - min). A degenerate objective (max == min) adds 0.
/// Throws ValidationError on duplicate lot ids.
CrowdingResult crowding_distances(std::span<const Candidate> front,
                                  const ObjectiveThresholds& thresholds = {});

/// Highest crowding distance first (+inf first), ties by lot_id, at most k.
/// Throws ValidationError if a candidate has no crowding entry.
std::vector<Candidate> select_top_k(std::span<const Candidate> front,
                                    const std::map<std::string, double>& crowding, std::size_t k);

enum class RecommendStatus { Ok, NoFeasibleLot };

const char* to_string(RecommendStatus status);

struct FrontResult {
  RecommendStatus status = RecommendStatus::Ok;
  std::string message;
  std::vector<Candidate> candidates;        // every evaluated lot
  std::vector<Candidate> members;           // epsilon front of the feasible candidates
  std::map<std::string, double> crowding;   // over members
  std::vector<std::string> selected;        // ordered, |selected| <= top_k

  bool empty() const noexcept { return selected.empty(); }
};

/// Threshold filter -> epsilon front -> crowding -> top-k over ready-made candidates.
FrontResult recommend_candidates(std::vector<Candidate> candidates,
                                 const ObjectiveThresholds& thresholds, double epsilon,
                                 std::size_t top_k);

/// Full pipeline over every lot in the database.
FrontResult recommend(const Query& q, const LotDB& lots, const EventStore& store,
                      const FareBook& fares, const Router& router);

/// Objective vectors of every lot for a query, in lot_id order.
std::vector<Candidate> evaluate_candidates(const Query& q, const LotDB& lots, const EventStore& store,
                                           const FareBook& fares, const Router& router);

}  // namespace moparker
