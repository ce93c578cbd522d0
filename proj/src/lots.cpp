// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/lots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moparker/error.hpp"

namespace moparker {

namespace {

using nlohmann::json;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Meridian arc length per degree; a lower bound on great-circle distance per
// degree of latitude difference.
constexpr double kMetersPerDegreeLat = kEarthRadiusMeters * std::numbers::pi / 180.0;

std::string lot_label(std::size_t index, std::size_t total) {
  std::string digits = std::to_string(index + 1);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "L" + digits;
}

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw SchemaError(where + ": '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw SchemaError(where + ": '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

ParkingLot make_lot(std::string lot_id, std::vector<ParkingBay> bays, std::string fare_schedule_id) {
  if (bays.empty()) throw ValidationError("lot " + lot_id + " has no bays");
  std::sort(bays.begin(), bays.end(),
            [](const ParkingBay& a, const ParkingBay& b) { return a.bay_id < b.bay_id; });
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& bay : bays) {
    if (bay.restriction != bays.front().restriction) {
      throw ValidationError("lot " + lot_id + " mixes restrictions '" + bays.front().restriction +
                            "' and '" + bay.restriction + "'");
    }
    lat += bay.location.lat();
    lon += bay.location.lon();
  }
  const auto n = static_cast<double>(bays.size());
  GeoPoint centroid(lat / n, lon / n);
  std::string restriction = bays.front().restriction;
  return ParkingLot{std::move(lot_id), std::move(bays), centroid, std::move(restriction),
                    std::move(fare_schedule_id)};
}

std::vector<ParkingLot> cluster_bays(std::span<const ParkingBay> bays, double d_max_meters) {
  if (!(d_max_meters > 0.0) || !std::isfinite(d_max_meters)) {
    throw ValidationError("d_max must be > 0 meters");
  }
  {
    std::set<std::string_view> seen;
    for (const auto& bay : bays) {
      if (!seen.insert(bay.bay_id).second) {
        throw ValidationError("duplicate bay_id: " + bay.bay_id);
      }
    }
  }
  const std::size_t n = bays.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bays[a].location.lat() < bays[b].location.lat();
  });

  const double lat_reach = d_max_meters / kMetersPerDegreeLat * (1.0 + 1e-9) + 1e-12;
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = bays[order[i]];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = bays[order[j]];
      if (b.location.lat() - a.location.lat() > lat_reach) break;
      if (a.restriction != b.restriction) continue;
      if (haversine_distance(a.location, b.location) <= d_max_meters) {
        sets.unite(order[i], order[j]);
      }
    }
  }

  std::map<std::size_t, std::vector<ParkingBay>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(bays[i]);

  std::vector<std::vector<ParkingBay>> members;
  members.reserve(groups.size());
  for (auto& [root, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const ParkingBay& a, const ParkingBay& b) { return a.bay_id < b.bay_id; });
    members.push_back(std::move(group));
  }
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.front().bay_id < b.front().bay_id; });

  std::vector<ParkingLot> lots;
  lots.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    std::string schedule = members[k].front().restriction;
    lots.push_back(make_lot(lot_label(k, members.size()), std::move(members[k]), std::move(schedule)));
  }
  return lots;
}

std::vector<ParkingBay> bays_from_events(const EventStore& store) {
  std::vector<ParkingBay> bays;
  for (const auto& id : store.bay_ids()) {
    const auto events = store.events_for(id);
    const auto& first = events.front();
    bays.push_back(ParkingBay{first.bay_id, first.location, first.restriction});
  }
  return bays;
}

LotDB::LotDB(std::vector<ParkingLot> lots) : lots_(std::move(lots)) {
  std::sort(lots_.begin(), lots_.end(),
            [](const ParkingLot& a, const ParkingLot& b) { return a.lot_id < b.lot_id; });
  for (std::size_t i = 1; i < lots_.size(); ++i) {
    if (lots_[i].lot_id == lots_[i - 1].lot_id) {
      throw ValidationError("duplicate lot_id: " + lots_[i].lot_id);
    }
  }
  for (const auto& lot : lots_) {
    if (lot.bays.empty()) throw ValidationError("lot " + lot.lot_id + " has no bays");
  }
  by_lat_.resize(lots_.size());
  std::iota(by_lat_.begin(), by_lat_.end(), std::size_t{0});
  std::sort(by_lat_.begin(), by_lat_.end(), [&](std::size_t a, std::size_t b) {
    return lots_[a].centroid.lat() < lots_[b].centroid.lat();
  });
}

const ParkingLot* LotDB::find(std::string_view lot_id) const {
  const auto it = std::lower_bound(lots_.begin(), lots_.end(), lot_id,
                                   [](const ParkingLot& l, std::string_view id) { return l.lot_id < id; });
  if (it == lots_.end() || it->lot_id != lot_id) return nullptr;
  return &*it;
}

std::size_t LotDB::bay_count() const noexcept {
  std::size_t n = 0;
  for (const auto& lot : lots_) n += lot.bays.size();
  return n;
}

std::vector<const ParkingLot*> LotDB::nearby(const GeoPoint& point, double radius_meters) const {
  std::vector<std::pair<double, const ParkingLot*>> hits;
  if (radius_meters < 0.0 || std::isnan(radius_meters)) return {};
  const double reach = radius_meters / kMetersPerDegreeLat * (1.0 + 1e-9) + 1e-12;
  const auto lo = std::lower_bound(by_lat_.begin(), by_lat_.end(), point.lat() - reach,
                                   [&](std::size_t i, double lat) { return lots_[i].centroid.lat() < lat; });
  for (auto it = lo; it != by_lat_.end(); ++it) {
    const auto& lot = lots_[*it];
    if (lot.centroid.lat() > point.lat() + reach) break;
    const double d = haversine_distance(point, lot.centroid);
    if (d <= radius_meters) hits.emplace_back(d, &lot);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->lot_id < b.second->lot_id;
  });
  std::vector<const ParkingLot*> out;
  out.reserve(hits.size());
  for (const auto& [d, lot] : hits) out.push_back(lot);
  return out;
}

std::string lots_to_json(std::span<const ParkingLot> lots, int indent) {
  json doc = json::array();
  for (const auto& lot : lots) {
    json bays = json::array();
    for (const auto& bay : lot.bays) {
      bays.push_back({{"bay_id", bay.bay_id},
                      {"lat", bay.location.lat()},
                      {"lon", bay.location.lon()},
                      {"restriction", bay.restriction}});
    }
    doc.push_back({{"lot_id", lot.lot_id},
                   {"restriction", lot.restriction},
                   {"centroid", {{"lat", lot.centroid.lat()}, {"lon", lot.centroid.lon()}}},
                   {"fare_schedule_id", lot.fare_schedule_id},
                   {"bays", std::move(bays)}});
  }
  return doc.dump(indent);
}

std::vector<ParkingLot> lots_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("lot database is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("lot database must be a JSON array");
  std::vector<ParkingLot> lots;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    const std::string where = "lots[" + std::to_string(i) + "]";
    if (!j.is_object()) throw SchemaError(where + " must be an object");
    auto lot_id = get_string(j, "lot_id", where);
    auto schedule = get_string(j, "fare_schedule_id", where);
    if (!j.contains("bays") || !j.at("bays").is_array()) {
      throw SchemaError(where + ": 'bays' must be an array");
    }
    std::vector<ParkingBay> bays;
    for (const auto& b : j.at("bays")) {
      const std::string bw = where + ".bays";
      bays.push_back(ParkingBay{get_string(b, "bay_id", bw),
                                GeoPoint(get_number(b, "lat", bw), get_number(b, "lon", bw)),
                                get_string(b, "restriction", bw)});
    }
    auto lot = make_lot(std::move(lot_id), std::move(bays), std::move(schedule));
    if (j.contains("restriction") && j.at("restriction") != lot.restriction) {
      throw SchemaError(where + ": restriction does not match member bays");
    }
    lots.push_back(std::move(lot));
  }
  return lots;
}

LotDB load_lot_db(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lot database: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return LotDB(lots_from_json(buf.str()));
}

void save_lots(const std::filesystem::path& path, std::span<const ParkingLot> lots) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write lot database: " + path.string());
  out << lots_to_json(lots) << '\n';
  if (!out) throw IoError("failed writing lot database: " + path.string());
}

}  // namespace moparker
