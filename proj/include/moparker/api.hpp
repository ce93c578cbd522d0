// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "moparker/fares.hpp"
#include "moparker/ingest.hpp"
#include "moparker/lots.hpp"
#include "moparker/pareto.hpp"
#include "moparker/routing.hpp"

namespace moparker {

/// Drive and walk legs for one recommended lot.
struct RoutePlan {
  Leg drive;  // source -> lot centroid
  Leg walk;   // lot centroid -> destination
  bool degraded = false;
};

/// Builds both legs with `router`, substituting `fallback` for any leg the
/// router cannot produce and flagging the plan as degraded.
RoutePlan build_route(const GeoPoint& source, const ParkingLot& lot, const GeoPoint& destination,
                      const Router& router, const Router& fallback);

/// GeoJSON FeatureCollection: one LineString per leg plus one Point at the lot.
nlohmann::json route_geojson(const std::string& lot_id, const GeoPoint& centroid, const RoutePlan& plan);

/// One selected lot with its objectives and legs.
struct Recommendation {
  std::string lot_id;
  ObjectiveVector objectives;
  double crowding = 0.0;
  RoutePlan routes;
};

/// Immutable data the service answers from.
struct Snapshot {
  EventStore store;
  LotDB lots;
  FareBook fares;
};

struct ServiceConfig {
  SpeedModel speeds;
  TimeZone zone{"UTC"};  // zone for `arrive` / `at` values without an offset
  double default_tau_minutes = 30.0;
  double default_threshold = 0.7;
  double default_epsilon = 0.01;
  std::size_t default_top_k = 5;
  std::size_t likelihood_history_days = 7;  // history used by predictor-backed likelihood
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct FieldError {
  std::string field;
  std::string message;
};

/// Request handling over a snapshot. Handlers are const and safe to call concurrently.
class Service {
 public:
  /// `router` defaults to the analytic router built from config.speeds.
  Service(std::shared_ptr<const Snapshot> snapshot, ServiceConfig config,
          std::shared_ptr<const Router> router = nullptr);

  /// POST /v1/recommend. 400 on schema errors, 422 on semantic errors,
  /// 200 with status "no_feasible_lot" when nothing passes the thresholds.
  HttpResponse handle_recommend(std::string_view body) const;
  /// GET /v1/lots
  HttpResponse handle_lots() const;
  /// GET /v1/lots/{id}/likelihood?at=...&tau=...[&method=...]
  HttpResponse handle_likelihood(std::string_view lot_id, std::optional<std::string> at,
                                 std::optional<std::string> tau,
                                 std::optional<std::string> method) const;
  /// GET /v1/health
  HttpResponse handle_health() const;

  /// Runs the engine and routing for a validated query.
  std::vector<Recommendation> recommend(const Query& q, RecommendStatus& status, bool& degraded) const;

  const Snapshot& snapshot() const noexcept { return *snapshot_; }
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  std::shared_ptr<const Snapshot> snapshot_;
  ServiceConfig config_;
  AnalyticRouter analytic_;
  std::shared_ptr<const Router> router_;
};

/// Parses and validates a recommend request body. On failure returns nullopt
/// and fills `errors`; `status` is 400 (schema) or 422 (semantic).
std::optional<Query> parse_recommend_request(std::string_view body, const ServiceConfig& config,
                                             std::vector<FieldError>& errors, int& status);

/// Encodes a crowding distance: a number, or the string "Infinity" at boundaries.
nlohmann::json crowding_json(double distance);

/// HTTP front end over a Service.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port. Throws IoError.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and serves until the process is stopped.
void serve(const Service& service, const std::string& host, int port);

}  // namespace moparker
