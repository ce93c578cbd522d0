// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/api.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <httplib.h>

#include "moparker/error.hpp"
#include "moparker/occupancy.hpp"

namespace moparker {

namespace {

using nlohmann::json;

json point_json(const GeoPoint& p) { return json::array({p.lon(), p.lat()}); }

json leg_feature(const std::string& lot_id, const Leg& leg) {
  json coords = json::array();
  for (const auto& p : leg.path) coords.push_back(point_json(p));
  return {{"type", "Feature"},
          {"geometry", {{"type", "LineString"}, {"coordinates", std::move(coords)}}},
          {"properties",
           {{"lot_id", lot_id}, {"leg", to_string(leg.mode)}, {"minutes", leg.minutes}, {"meters", leg.meters}}}};
}

HttpResponse json_response(int status, const json& body) {
  return HttpResponse{status, body.dump(), "application/json"};
}

HttpResponse error_response(int status, const std::string& code, const std::vector<FieldError>& errors) {
  json list = json::array();
  for (const auto& e : errors) list.push_back({{"field", e.field}, {"message", e.message}});
  return json_response(status, {{"status", code}, {"errors", std::move(list)}});
}

json objectives_json(const ObjectiveVector& v) {
  return {{"travel_min", v.travel_minutes}, {"walk_km", v.walk_km}, {"fare", v.fare}, {"likelihood", v.likelihood}};
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Reads a coordinate object `name` = {lat, lon}; schema problems are 400s.
std::optional<GeoPoint> read_point(const json& body, const std::string& name, std::vector<FieldError>& errors) {
  if (!body.contains(name)) {
    errors.push_back({name, "required"});
    return std::nullopt;
  }
  const auto& p = body.at(name);
  if (!p.is_object()) {
    errors.push_back({name, "must be an object with lat and lon"});
    return std::nullopt;
  }
  bool ok = true;
  double lat = 0.0;
  double lon = 0.0;
  const auto coord = [&](const char* key, double lo, double hi, double& out) {
    const std::string field = name + "." + key;
    if (!p.contains(key) || !p.at(key).is_number()) {
      errors.push_back({field, "must be a number"});
      ok = false;
      return;
    }
    out = p.at(key).get<double>();
    if (!(out >= lo && out <= hi)) {
      errors.push_back({field, "must be in [" + std::to_string(static_cast<int>(lo)) + ", " +
                                   std::to_string(static_cast<int>(hi)) + "]"});
      ok = false;
    }
  };
  coord("lat", -90.0, 90.0, lat);
  coord("lon", -180.0, 180.0, lon);
  if (!ok) return std::nullopt;
  return GeoPoint(lat, lon);
}

std::optional<double> read_number(const json& body, const char* key, std::vector<FieldError>& errors) {
  if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
  if (!body.at(key).is_number()) {
    errors.push_back({key, "must be a number"});
    return std::nullopt;
  }
  return body.at(key).get<double>();
}

}  // namespace

RoutePlan build_route(const GeoPoint& source, const ParkingLot& lot, const GeoPoint& destination,
                      const Router& router, const Router& fallback) {
  RoutePlan plan;
  try {
    plan.drive = router.route(source, lot.centroid, TravelMode::Drive);
  } catch (const RoutingError&) {
    plan.drive = fallback.route(source, lot.centroid, TravelMode::Drive);
    plan.degraded = true;
  }
  try {
    plan.walk = router.route(lot.centroid, destination, TravelMode::Walk);
  } catch (const RoutingError&) {
    plan.walk = fallback.route(lot.centroid, destination, TravelMode::Walk);
    plan.degraded = true;
  }
  return plan;
}

json route_geojson(const std::string& lot_id, const GeoPoint& centroid, const RoutePlan& plan) {
  json features = json::array();
  features.push_back(leg_feature(lot_id, plan.drive));
  features.push_back(leg_feature(lot_id, plan.walk));
  features.push_back({{"type", "Feature"},
                      {"geometry", {{"type", "Point"}, {"coordinates", point_json(centroid)}}},
                      {"properties", {{"lot_id", lot_id}, {"role", "lot"}}}});
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

json crowding_json(double distance) {
  if (std::isinf(distance)) return "Infinity";
  return distance;
}

std::optional<Query> parse_recommend_request(std::string_view body, const ServiceConfig& config,
                                             std::vector<FieldError>& errors, int& status) {
  errors.clear();
  status = 400;
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error&) {
    errors.push_back({"body", "must be valid JSON"});
    return std::nullopt;
  }
  if (!doc.is_object()) {
    errors.push_back({"body", "must be a JSON object"});
    return std::nullopt;
  }

  const auto from = read_point(doc, "from", errors);
  const auto to = read_point(doc, "to", errors);

  std::optional<Timestamp> arrive;
  if (!doc.contains("arrive") || !doc.at("arrive").is_string()) {
    errors.push_back({"arrive", "required ISO-8601 string"});
  } else {
    try {
      arrive = parse_iso8601(doc.at("arrive").get<std::string>(), config.zone);
    } catch (const Error& e) {
      errors.push_back({"arrive", e.what()});
    }
  }
  const auto tau = read_number(doc, "tau_minutes", errors);
  const auto duration = read_number(doc, "duration_minutes", errors);
  if (!doc.contains("duration_minutes")) errors.push_back({"duration_minutes", "required"});
  const auto threshold = read_number(doc, "threshold_likelihood", errors);
  const auto epsilon = read_number(doc, "epsilon", errors);
  std::optional<std::int64_t> top_k;
  if (doc.contains("top_k") && !doc.at("top_k").is_null()) {
    if (!doc.at("top_k").is_number_integer()) {
      errors.push_back({"top_k", "must be an integer"});
    } else {
      top_k = doc.at("top_k").get<std::int64_t>();
    }
  }
  if (!errors.empty()) return std::nullopt;

  status = 422;
  const double tau_v = tau.value_or(config.default_tau_minutes);
  const double threshold_v = threshold.value_or(config.default_threshold);
  const double epsilon_v = epsilon.value_or(config.default_epsilon);
  const std::int64_t k_v = top_k.value_or(static_cast<std::int64_t>(config.default_top_k));
  if (!(tau_v > 0.0)) errors.push_back({"tau_minutes", "must be > 0"});
  if (!(*duration > 0.0)) errors.push_back({"duration_minutes", "must be > 0"});
  if (!(threshold_v >= 0.0 && threshold_v <= 1.0)) {
    errors.push_back({"threshold_likelihood", "must be in [0, 1]"});
  }
  if (!(epsilon_v >= 0.0)) errors.push_back({"epsilon", "must be >= 0"});
  if (k_v < 1) errors.push_back({"top_k", "must be >= 1"});
  if (!errors.empty()) return std::nullopt;

  status = 200;
  return Query{*from,     *to,        TimeWindow(*arrive, tau_v),          *duration,
               threshold_v, epsilon_v, static_cast<std::size_t>(k_v)};
}

Service::Service(std::shared_ptr<const Snapshot> snapshot, ServiceConfig config,
                 std::shared_ptr<const Router> router)
    : snapshot_(std::move(snapshot)), config_(std::move(config)), analytic_(config_.speeds), router_(std::move(router)) {
  if (!snapshot_) throw ConfigError("service needs a data snapshot");
  for (const auto& lot : snapshot_->lots.lots()) {
    if (snapshot_->fares.find(lot.fare_schedule_id) == nullptr) {
      throw ConfigError("lot " + lot.lot_id + " references missing fare schedule '" +
                        lot.fare_schedule_id + "'");
    }
  }
}

std::vector<Recommendation> Service::recommend(const Query& q, RecommendStatus& status, bool& degraded) const {
  const Router& primary = router_ ? *router_ : static_cast<const Router&>(analytic_);
  RoutingSession session(primary, analytic_);
  const auto& snap = *snapshot_;
  const FrontResult front = moparker::recommend(q, snap.lots, snap.store, snap.fares, session);
  status = front.status;
  std::vector<Recommendation> out;
  for (const auto& id : front.selected) {
    const auto* lot = snap.lots.find(id);
    const auto member = std::find_if(front.members.begin(), front.members.end(),
                                     [&](const Candidate& c) { return c.lot_id == id; });
    auto plan = build_route(q.source, *lot, q.destination, session, analytic_);
    out.push_back(Recommendation{id, member->objectives, front.crowding.at(id), std::move(plan)});
  }
  degraded = session.degraded() ||
             std::any_of(out.begin(), out.end(), [](const Recommendation& r) { return r.routes.degraded; });
  return out;
}

HttpResponse Service::handle_recommend(std::string_view body) const {
  std::vector<FieldError> errors;
  int status = 400;
  const auto query = parse_recommend_request(body, config_, errors, status);
  if (!query) return error_response(status, status == 400 ? "invalid_request" : "unprocessable_request", errors);
  try {
    RecommendStatus engine_status = RecommendStatus::Ok;
    bool degraded = false;
    const auto recs = recommend(*query, engine_status, degraded);
    json list = json::array();
    for (const auto& r : recs) {
      const auto* lot = snapshot_->lots.find(r.lot_id);
      list.push_back({{"lot_id", r.lot_id},
                      {"objectives", objectives_json(r.objectives)},
                      {"crowding", crowding_json(r.crowding)},
                      {"routes", route_geojson(r.lot_id, lot->centroid, r.routes)}});
    }
    return json_response(200, {{"status", to_string(engine_status)},
                               {"route_degraded", degraded},
                               {"recommendations", std::move(list)}});
  } catch (const ValidationError& e) {
    return error_response(422, "unprocessable_request", {{"query", e.what()}});
  }
}

HttpResponse Service::handle_lots() const {
  auto lots = json::parse(lots_to_json(snapshot_->lots.lots(), -1));
  return json_response(200, {{"lots", std::move(lots)}});
}

HttpResponse Service::handle_likelihood(std::string_view lot_id, std::optional<std::string> at,
                                        std::optional<std::string> tau,
                                        std::optional<std::string> method) const {
  const auto* lot = snapshot_->lots.find(lot_id);
  if (lot == nullptr) {
    return error_response(404, "not_found", {{"lot_id", "unknown lot '" + std::string(lot_id) + "'"}});
  }
  if (!at) return error_response(400, "invalid_request", {{"at", "required ISO-8601 timestamp"}});
  Timestamp start;
  try {
    start = parse_iso8601(*at, config_.zone);
  } catch (const Error& e) {
    return error_response(400, "invalid_request", {{"at", e.what()}});
  }
  double tau_minutes = config_.default_tau_minutes;
  if (tau) {
    const auto v = parse_number(*tau);
    if (!v) return error_response(400, "invalid_request", {{"tau", "must be a number"}});
    tau_minutes = *v;
  }
  if (!(tau_minutes > 0.0)) return error_response(422, "unprocessable_request", {{"tau", "must be > 0"}});

  json body = {{"lot_id", lot->lot_id}, {"at", format_iso8601_utc(start)}, {"tau_minutes", tau_minutes}};
  try {
    if (!method) {
      body["method"] = "historical";
      body["likelihood"] = likelihood(*lot, snapshot_->store, TimeWindow(start, tau_minutes));
    } else {
      const auto m = parse_predict_method(*method);
      const double bins_per_day = kDefaultSeasonMinutes / tau_minutes;
      if (std::abs(bins_per_day - std::round(bins_per_day)) > 1e-9) {
        return error_response(422, "unprocessable_request", {{"tau", "must divide one day when a method is given"}});
      }
      const auto bins = static_cast<std::int64_t>(std::round(bins_per_day)) *
                        static_cast<std::int64_t>(config_.likelihood_history_days);
      const auto history_start = start - std::chrono::seconds(static_cast<std::int64_t>(
                                             std::llround(static_cast<double>(bins) * tau_minutes * 60.0)));
      const auto series = build_series(*lot, snapshot_->store, tau_minutes, history_start, start);
      body["method"] = to_string(m);
      body["likelihood"] = 1.0 - predict(series, tau_minutes, m);
    }
  } catch (const ValidationError& e) {
    return error_response(422, "unprocessable_request", {{"method", e.what()}});
  }
  return json_response(200, body);
}

HttpResponse Service::handle_health() const {
  const Router& primary = router_ ? *router_ : static_cast<const Router&>(analytic_);
  return json_response(200, {{"status", "ok"},
                             {"lots", snapshot_->lots.size()},
                             {"bays", snapshot_->lots.bay_count()},
                             {"events", snapshot_->store.size()},
                             {"fare_schedules", snapshot_->fares.size()},
                             {"router", to_string(primary.kind())}});
}

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

std::optional<std::string> param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

}  // namespace

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  const Service* svc = &service;
  s.Post("/v1/recommend", [svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->handle_recommend(req.body));
  });
  s.Get("/v1/lots", [svc](const httplib::Request&, httplib::Response& res) { reply(res, svc->handle_lots()); });
  s.Get(R"(/v1/lots/([^/]+)/likelihood)", [svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->handle_likelihood(req.matches[1].str(), param(req, "at"), param(req, "tau"),
                                      param(req, "method")));
  });
  s.Get("/v1/health", [svc](const httplib::Request&, httplib::Response& res) { reply(res, svc->handle_health()); });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    reply(res, error_response(500, "internal_error", {{"server", "unexpected failure"}}));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void serve(const Service& service, const std::string& host, int port) {
  HttpServer server(service);
  server.bind(host, port);
  server.listen();
}

}  // namespace moparker
