// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "moparker/error.hpp"

namespace moparker {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 4> costs(const ObjectiveVector& v) noexcept {
  return {v.travel_minutes, v.walk_km, v.fare, -v.likelihood};
}

// Stable lot_id order, used for every returned set.
void sort_by_lot_id(std::vector<Candidate>& cs) {
  std::stable_sort(cs.begin(), cs.end(),
                   [](const Candidate& a, const Candidate& b) { return a.lot_id < b.lot_id; });
}

void require_unique_ids(std::span<const Candidate> cs) {
  std::set<std::string_view> seen;
  for (const auto& c : cs) {
    if (!seen.insert(c.lot_id).second) throw ValidationError("duplicate lot_id: " + c.lot_id);
  }
}

// Pareto front by a lexicographic sweep: a dominator always sorts before what
// it dominates, so each candidate only needs checking against the front so far.
std::vector<Candidate> sweep_front(std::span<const Candidate> candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::array<double, 4>> keyed(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) keyed[i] = costs(candidates[i].objectives);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(keyed[a], candidates[a].lot_id) < std::tie(keyed[b], candidates[b].lot_id);
  });
  std::vector<std::size_t> front;
  for (const std::size_t i : order) {
    const bool dominated = std::any_of(front.begin(), front.end(), [&](std::size_t f) {
      return dominates(candidates[f].objectives, candidates[i].objectives);
    });
    if (!dominated) front.push_back(i);
  }
  std::sort(front.begin(), front.end());
  std::vector<Candidate> out;
  out.reserve(front.size());
  for (const std::size_t i : front) out.push_back(candidates[i]);
  return out;
}

}  // namespace

const char* to_string(Objective m) {
  switch (m) {
    case Objective::TravelTime:
      return "travel_min";
    case Objective::WalkDistance:
      return "walk_km";
    case Objective::Fare:
      return "fare";
    case Objective::Likelihood:
      return "likelihood";
  }
  return "unknown";
}

double value(const ObjectiveVector& v, Objective m) {
  switch (m) {
    case Objective::TravelTime:
      return v.travel_minutes;
    case Objective::WalkDistance:
      return v.walk_km;
    case Objective::Fare:
      return v.fare;
    case Objective::Likelihood:
      return v.likelihood;
  }
  return 0.0;
}

double cost(const ObjectiveVector& v, Objective m) {
  return is_maximized(m) ? -value(v, m) : value(v, m);
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
  const auto ca = costs(a);
  const auto cb = costs(b);
  bool strictly = false;
  for (std::size_t m = 0; m < ca.size(); ++m) {
    if (ca[m] > cb[m]) return false;
    if (ca[m] < cb[m]) strictly = true;
  }
  return strictly;
}

bool dominates(const Candidate& a, const Candidate& b) noexcept {
  return dominates(a.objectives, b.objectives);
}

std::vector<Candidate> naive_front(std::span<const Candidate> candidates) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      dominated = j != i && dominates(candidates[j], candidates[i]);
    }
    if (!dominated) out.push_back(candidates[i]);
  }
  sort_by_lot_id(out);
  return out;
}

std::array<double, 4> cost_ranges(std::span<const Candidate> candidates) noexcept {
  std::array<double, 4> ranges{};
  if (candidates.empty()) return ranges;
  auto lo = costs(candidates.front().objectives);
  auto hi = lo;
  for (const auto& c : candidates) {
    const auto v = costs(c.objectives);
    for (std::size_t m = 0; m < v.size(); ++m) {
      lo[m] = std::min(lo[m], v[m]);
      hi[m] = std::max(hi[m], v[m]);
    }
  }
  for (std::size_t m = 0; m < ranges.size(); ++m) ranges[m] = hi[m] - lo[m];
  return ranges;
}

bool epsilon_dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                       const std::array<double, 4>& ranges, double epsilon) noexcept {
  const auto ca = costs(a);
  const auto cb = costs(b);
  bool strictly = false;
  for (std::size_t m = 0; m < ca.size(); ++m) {
    if (ranges[m] > 0.0) {
      // (a - min)/range - eps <= (b - min)/range, scaled by range.
      const double shifted = ca[m] - epsilon * ranges[m];
      if (shifted > cb[m]) return false;
      if (shifted < cb[m]) strictly = true;
    } else if (epsilon > 0.0) {
      strictly = true;  // both normalize to 0, and 0 - eps < 0
    }
  }
  return strictly;
}

double normalized_cost_sum(const ObjectiveVector& v, const std::array<double, 4>& minima,
                           const std::array<double, 4>& ranges) noexcept {
  const auto c = costs(v);
  double sum = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (ranges[m] > 0.0) sum += (c[m] - minima[m]) / ranges[m];
  }
  return sum;
}

std::vector<Candidate> epsilon_front(std::span<const Candidate> candidates, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon must be a finite value >= 0");
  }
  std::vector<Candidate> front = sweep_front(candidates);
  if (epsilon == 0.0 || front.size() < 2) {
    sort_by_lot_id(front);
    return front;
  }

  const auto ranges = cost_ranges(candidates);
  std::array<double, 4> minima = costs(candidates.front().objectives);
  for (const auto& c : candidates) {
    const auto v = costs(c.objectives);
    for (std::size_t m = 0; m < v.size(); ++m) minima[m] = std::min(minima[m], v[m]);
  }

  std::vector<std::pair<double, std::size_t>> ranked(front.size());
  for (std::size_t i = 0; i < front.size(); ++i) {
    ranked[i] = {normalized_cost_sum(front[i].objectives, minima, ranges), i};
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return front[a.second].lot_id < front[b.second].lot_id;
  });

  std::vector<Candidate> kept;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& c = front[ranked[i].second];
    bool covered = false;
    for (std::size_t j = 0; j < i && !covered; ++j) {
      covered = epsilon_dominates(front[ranked[j].second].objectives, c.objectives, ranges, epsilon);
    }
    if (!covered) kept.push_back(c);
  }
  sort_by_lot_id(kept);
  return kept;
}

bool ObjectiveThresholds::admits(const ObjectiveVector& v) const noexcept {
  if (max_travel_minutes && !(v.travel_minutes <= *max_travel_minutes)) return false;
  if (max_walk_km && !(v.walk_km <= *max_walk_km)) return false;
  if (max_fare && !(v.fare <= *max_fare)) return false;
  if (min_likelihood && !(v.likelihood >= *min_likelihood)) return false;
  return true;
}

CrowdingResult crowding_distances(std::span<const Candidate> front,
                                  const ObjectiveThresholds& thresholds) {
  require_unique_ids(front);
  CrowdingResult result;
  for (const auto& c : front) {
    if (thresholds.admits(c.objectives)) result.retained.push_back(c);
  }
  sort_by_lot_id(result.retained);
  const auto& s = result.retained;
  const std::size_t l = s.size();
  if (l == 0) return result;

  std::vector<double> cd(l, 0.0);
  std::vector<std::size_t> order(l);
  for (const Objective m : kObjectives) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // retained is lot_id ordered, so a stable sort breaks ties by lot_id.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return value(s[a].objectives, m) < value(s[b].objectives, m);
    });
    cd[order.front()] = kInf;
    cd[order.back()] = kInf;
    const double range = value(s[order.back()].objectives, m) - value(s[order.front()].objectives, m);
    if (!(range > 0.0)) continue;
    for (std::size_t i = 1; i + 1 < l; ++i) {
      cd[order[i]] += (value(s[order[i + 1]].objectives, m) - value(s[order[i - 1]].objectives, m)) / range;
    }
  }
  for (std::size_t i = 0; i < l; ++i) result.distance.emplace(s[i].lot_id, cd[i]);
  return result;
}

std::vector<Candidate> select_top_k(std::span<const Candidate> front,
                                    const std::map<std::string, double>& crowding, std::size_t k) {
  std::vector<std::pair<double, const Candidate*>> ranked;
  ranked.reserve(front.size());
  for (const auto& c : front) {
    const auto it = crowding.find(c.lot_id);
    if (it == crowding.end()) throw ValidationError("no crowding distance for lot " + c.lot_id);
    ranked.emplace_back(it->second, &c);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->lot_id < b.second->lot_id;
  });
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(*ranked[i].second);
  return out;
}

const char* to_string(RecommendStatus status) {
  switch (status) {
    case RecommendStatus::Ok:
      return "ok";
    case RecommendStatus::NoFeasibleLot:
      return "no_feasible_lot";
  }
  return "unknown";
}

FrontResult recommend_candidates(std::vector<Candidate> candidates,
                                 const ObjectiveThresholds& thresholds, double epsilon,
                                 std::size_t top_k) {
  require_unique_ids(candidates);
  FrontResult result;
  sort_by_lot_id(candidates);
  result.candidates = std::move(candidates);

  std::vector<Candidate> feasible;
  for (const auto& c : result.candidates) {
    if (thresholds.admits(c.objectives)) feasible.push_back(c);
  }
  if (feasible.empty()) {
    result.status = RecommendStatus::NoFeasibleLot;
    result.message = result.candidates.empty() ? "no candidate lots"
                                               : "no lot satisfies the objective thresholds";
    return result;
  }

  result.members = epsilon_front(feasible, epsilon);
  auto crowding = crowding_distances(result.members, thresholds);
  result.crowding = std::move(crowding.distance);
  for (const auto& c : select_top_k(result.members, result.crowding, top_k)) {
    result.selected.push_back(c.lot_id);
  }
  return result;
}

std::vector<Candidate> evaluate_candidates(const Query& q, const LotDB& lots, const EventStore& store,
                                           const FareBook& fares, const Router& router) {
  validate(q);
  std::vector<Candidate> out;
  out.reserve(lots.size());
  for (const auto& lot : lots.lots()) {
    out.push_back(Candidate{lot.lot_id, objective_vector(q, lot, store, fares, router)});
  }
  return out;
}

FrontResult recommend(const Query& q, const LotDB& lots, const EventStore& store,
                      const FareBook& fares, const Router& router) {
  ObjectiveThresholds thresholds;
  thresholds.min_likelihood = q.likelihood_threshold;
  return recommend_candidates(evaluate_candidates(q, lots, store, fares, router), thresholds,
                              q.epsilon, q.top_k);
}

}  // namespace moparker
