// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/routing.hpp"

#include <cmath>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace moparker {

const char* to_string(RouterKind kind) {
  switch (kind) {
    case RouterKind::Analytic:
      return "analytic";
    case RouterKind::External:
      return "external";
  }
  return "unknown";
}

Leg AnalyticRouter::route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const {
  const double meters = haversine_distance(from, to);
  const double speed = mode == TravelMode::Drive ? speeds_.drive_kmh() : speeds_.walk_kmh();
  return Leg{mode, {from, to}, minutes_for_distance(meters, speed), meters};
}

OsrmRouter::OsrmRouter(OsrmConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("OSRM router needs a base URL");
  if (!(config_.timeout_seconds > 0.0)) throw ConfigError("OSRM timeout must be > 0");
}

Leg OsrmRouter::route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const {
  using nlohmann::json;
  const auto& profile = mode == TravelMode::Drive ? config_.drive_profile : config_.walk_profile;
  std::ostringstream path;
  path.precision(10);
  path << "/route/v1/" << profile << '/' << from.lon() << ',' << from.lat() << ';' << to.lon() << ','
       << to.lat() << "?overview=full&geometries=geojson";

  httplib::Client client(config_.base_url);
  const auto whole = static_cast<time_t>(config_.timeout_seconds);
  const auto micros = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(whole)) * 1e6);
  client.set_connection_timeout(whole, micros);
  client.set_read_timeout(whole, micros);
  client.set_write_timeout(whole, micros);

  const auto res = client.Get(path.str());
  if (!res) throw RoutingError(mode, "request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw RoutingError(mode, "HTTP status " + std::to_string(res->status));

  Leg leg;
  leg.mode = mode;
  try {
    const auto doc = json::parse(res->body);
    if (doc.value("code", std::string{}) != "Ok") {
      throw RoutingError(mode, "router answered code '" + doc.value("code", std::string{"?"}) + "'");
    }
    const auto& r = doc.at("routes").at(0);
    leg.minutes = r.at("duration").get<double>() / 60.0;
    leg.meters = r.at("distance").get<double>();
    for (const auto& c : r.at("geometry").at("coordinates")) {
      leg.path.emplace_back(c.at(1).get<double>(), c.at(0).get<double>());
    }
  } catch (const RoutingError&) {
    throw;
  } catch (const std::exception& e) {
    throw RoutingError(mode, std::string("malformed router response: ") + e.what());
  }
  if (!std::isfinite(leg.minutes) || leg.minutes < 0.0 || !std::isfinite(leg.meters) || leg.meters < 0.0) {
    throw RoutingError(mode, "router returned a negative or non-finite leg");
  }
  // Snapped road geometry may not touch the exact endpoints.
  if (leg.path.empty() || !(leg.path.front() == from)) leg.path.insert(leg.path.begin(), from);
  if (!(leg.path.back() == to)) leg.path.push_back(to);
  return leg;
}

Leg RoutingSession::route(const GeoPoint& from, const GeoPoint& to, TravelMode mode) const {
  const Key key{from.lat(), from.lon(), to.lat(), to.lon(), static_cast<int>(mode)};
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  Leg leg;
  try {
    leg = primary_.route(from, to, mode);
  } catch (const RoutingError&) {
    leg = fallback_.route(from, to, mode);
    degraded_ = true;
  }
  cache_.emplace(key, leg);
  return leg;
}

}  // namespace moparker
