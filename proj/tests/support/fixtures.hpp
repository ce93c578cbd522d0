// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-built datasets and random generators shared by the tests.

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "moparker/api.hpp"
#include "moparker/pareto.hpp"

namespace moparker::fixture {

struct TableRow {
  std::string lot_id;
  double drive_minutes;
  double walk_minutes;
  ObjectiveVector objectives;
};

/// Melbourne case study, five front members.
std::vector<TableRow> melbourne_case();
/// Rye case study, seven front members.
std::vector<TableRow> rye_case();

std::vector<Candidate> as_candidates(const std::vector<TableRow>& rows);

/// Router answering with prescribed per-lot leg minutes, keyed by lot centroid.
class TableRouter final : public Router {
 public:
  struct Entry {
    GeoPoint centroid;
    double drive_minutes;
    double walk_minutes;
  };
  explicit TableRouter(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  RouterKind kind() const noexcept override { return RouterKind::External; }
  Leg route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const override;

 private:
  std::vector<Entry> entries_;
};

/// Snapshot, router and query whose engine output reproduces `rows` exactly:
/// one-bay lots on the meridian through the destination, a flat hourly rate
/// per lot, and sensor events sized to give each likelihood.
struct TableScenario {
  std::shared_ptr<const Snapshot> snapshot;
  std::shared_ptr<const TableRouter> router;
  GeoPoint source;
  GeoPoint destination;
  Timestamp arrive;
  double tau_minutes = 30.0;
  double duration_minutes = 60.0;

  Query query(double threshold = 0.7, double epsilon = 0.0, std::size_t top_k = 10) const;
  std::string request_body(double threshold = 0.7, double epsilon = 0.0, std::size_t top_k = 10) const;
};

TableScenario table_scenario(const std::vector<TableRow>& rows);

/// Random candidates; with `coarse` the values come from small grids so ties are common.
std::vector<Candidate> random_candidates(std::mt19937_64& rng, std::size_t n, bool coarse);

ObjectiveVector random_vector(std::mt19937_64& rng, bool coarse);

/// Bays scattered over a few hundred meters with a handful of restriction labels.
std::vector<ParkingBay> random_bays(std::mt19937_64& rng, std::size_t n);

/// Events at the given bays over [t0, t0 + span_s), overlaps and blips included.
std::vector<ParkingEvent> random_events(std::mt19937_64& rng, const std::vector<ParkingBay>& bays,
                                        Timestamp t0, long span_s, std::size_t n);

Timestamp at(const char* iso);

}  // namespace moparker::fixture
