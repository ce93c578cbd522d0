// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

// moparker command line: ingest, cluster, evaluate-likelihood, recommend, compare, serve.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moparker/api.hpp"
#include "moparker/baseline.hpp"
#include "moparker/error.hpp"
#include "moparker/occupancy.hpp"

namespace {

using nlohmann::json;
using namespace moparker;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

json parse_point_arg(const std::string& text, const char* name) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError(std::string(name) + " must be 'lat,lon'");
  try {
    return {{"lat", std::stod(text.substr(0, comma))}, {"lon", std::stod(text.substr(comma + 1))}};
  } catch (const std::exception&) {
    throw ValidationError(std::string(name) + " must be 'lat,lon'");
  }
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw ValidationError("--bind must be host:port");
  return {bind.substr(0, colon), std::stoi(bind.substr(colon + 1))};
}

struct SnapshotPaths {
  std::string store;
  std::string lots;
  std::string fares;
};

std::shared_ptr<const Snapshot> load_snapshot(const SnapshotPaths& p) {
  return std::make_shared<const Snapshot>(
      Snapshot{load_event_store(p.store), load_lot_db(p.lots), load_fare_book(p.fares)});
}

struct EngineOptions {
  double drive_kmh = 30.0;
  double walk_kmh = 5.0;
  std::string tz = "UTC";
  std::string osrm_url;
  double osrm_timeout = 2.0;
  double epsilon = 0.01;
  double threshold = 0.7;
  std::size_t top_k = 5;
  double tau = 30.0;
};

void add_engine_options(CLI::App* cmd, EngineOptions& o) {
  cmd->add_option("--drive-kmh", o.drive_kmh, "Analytic drive speed")->envname("MOPARKER_DRIVE_KMH");
  cmd->add_option("--walk-kmh", o.walk_kmh, "Analytic walk speed")->envname("MOPARKER_WALK_KMH");
  cmd->add_option("--tz", o.tz, "Zone for timestamps without an offset")->envname("MOPARKER_TZ");
  cmd->add_option("--osrm-url", o.osrm_url, "OSRM-compatible routing service; analytic router if empty")
      ->envname("MOPARKER_OSRM_URL");
  cmd->add_option("--osrm-timeout", o.osrm_timeout, "Routing request timeout in seconds");
}

ServiceConfig make_config(const EngineOptions& o) {
  ServiceConfig c;
  c.speeds = SpeedModel(o.drive_kmh, o.walk_kmh);
  c.zone = TimeZone(o.tz);
  c.default_epsilon = o.epsilon;
  c.default_threshold = o.threshold;
  c.default_top_k = o.top_k;
  c.default_tau_minutes = o.tau;
  return c;
}

std::shared_ptr<const Router> make_router(const EngineOptions& o) {
  if (o.osrm_url.empty()) return nullptr;
  return std::make_shared<OsrmRouter>(OsrmConfig{o.osrm_url, "driving", "foot", o.osrm_timeout});
}

std::string format_crowding(double d) {
  if (std::isinf(d)) return "inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << d;
  return s.str();
}

int run_ingest(const std::string& input, const std::string& tz, const std::string& out,
               const std::string& report_path) {
  const auto result = parse_events_file(input, TimeZone(tz));
  const auto& r = result.report;
  save_event_store(out, EventStore(result.events));
  std::cout << "accepted " << r.accepted << ", rejected " << r.rejected << '\n';
  for (const auto& [line, reason] : r.reject_reasons) {
    std::cerr << input << ':' << line << ": " << reason << '\n';
  }
  if (!report_path.empty()) {
    json reasons = json::array();
    for (const auto& [line, reason] : r.reject_reasons) reasons.push_back({{"line", line}, {"reason", reason}});
    write_file(report_path, json{{"accepted", r.accepted}, {"rejected", r.rejected}, {"reject_reasons", reasons}}
                                .dump(2) + "\n");
  }
  return 0;
}

int run_cluster(const std::string& store_path, double dmax, const std::string& out, const std::string& fare_map) {
  const auto store = load_event_store(store_path);
  auto lots = cluster_bays(bays_from_events(store), dmax);
  if (!fare_map.empty()) {
    const auto map = json::parse(read_file(fare_map));
    for (auto& lot : lots) {
      if (map.contains(lot.restriction)) lot.fare_schedule_id = map.at(lot.restriction).get<std::string>();
    }
  }
  save_lots(out, lots);
  std::size_t bays = 0;
  for (const auto& lot : lots) bays += lot.bays.size();
  std::cout << bays << " bays -> " << lots.size() << " lots\n";
  return 0;
}

int run_evaluate(const std::string& store_path, const std::string& lots_path, const std::string& method_name,
                 double horizon, double bin, const std::string& report_path) {
  const auto store = load_event_store(store_path);
  const auto db = load_lot_db(lots_path);
  const auto method = parse_predict_method(method_name);
  json lots = json::array();
  json skipped = json::array();
  double mae_sum = 0.0;
  double rmse_sum = 0.0;
  if (!store.empty()) {
    using namespace std::chrono;
    const auto bin_s = static_cast<std::int64_t>(std::llround(bin * 60.0));
    const auto floor_bin = [&](Timestamp t) {
      const auto s = t.time_since_epoch().count();
      return Timestamp{seconds{s - ((s % bin_s) + bin_s) % bin_s}};
    };
    const auto start = floor_bin(store.earliest());
    const auto end = floor_bin(store.latest()) + seconds{bin_s};
    for (const auto& lot : db.lots()) {
      const auto series = build_series(lot, store, bin, start, end);
      try {
        const auto eval = evaluate_predictor(series, method, horizon);
        lots.push_back({{"lot_id", lot.lot_id}, {"mae", eval.mae}, {"rmse", eval.rmse}, {"points", eval.points}});
        mae_sum += eval.mae;
        rmse_sum += eval.rmse;
      } catch (const ValidationError& e) {
        skipped.push_back({{"lot_id", lot.lot_id}, {"reason", e.what()}});
      }
    }
  }
  const double n = static_cast<double>(lots.size());
  json report = {{"method", to_string(method)},
                 {"horizon_minutes", horizon},
                 {"bin_minutes", bin},
                 {"granularity", "per-lot"},
                 {"lots", lots},
                 {"skipped", skipped},
                 {"mean_mae", n > 0 ? json(mae_sum / n) : json(nullptr)},
                 {"mean_rmse", n > 0 ? json(rmse_sum / n) : json(nullptr)}};
  write_file(report_path, report.dump(2) + "\n");
  std::cout << "evaluated " << lots.size() << " lots, skipped " << skipped.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moparker: multi-objective parking recommendation"};
  app.require_subcommand(1);

  std::string input, tz = "UTC", out, report;
  auto* ingest = app.add_subcommand("ingest", "Parse a parking event log into an event store");
  ingest->add_option("--input", input, "Event log CSV")->required();
  ingest->add_option("--tz", tz, "IANA zone of timestamps without an offset");
  ingest->add_option("--out", out, "Event store path")->required();
  ingest->add_option("--report", report, "Optional JSON ingest report");

  std::string store_path, lots_path, fares_path, fare_map;
  double dmax = kDefaultMaxBayGapMeters;
  auto* cluster = app.add_subcommand("cluster", "Cluster bays into parking lots");
  cluster->add_option("--store", store_path, "Event store")->required();
  cluster->add_option("--dmax", dmax, "Maximum bay gap in meters");
  cluster->add_option("--out", out, "Lot database JSON")->required();
  cluster->add_option("--fare-map", fare_map, "JSON object mapping restriction to fare_schedule_id");

  std::string method = "seasonal-naive";
  double horizon = 15.0;
  double bin = 15.0;
  auto* evaluate = app.add_subcommand("evaluate-likelihood", "MAE/RMSE of a likelihood predictor per lot");
  evaluate->add_option("--store", store_path)->required();
  evaluate->add_option("--lots", lots_path)->required();
  evaluate->add_option("--method", method, "historical-mean | seasonal-naive | persistence");
  evaluate->add_option("--horizon", horizon, "Forecast horizon in minutes");
  evaluate->add_option("--bin", bin, "Series bin length in minutes");
  evaluate->add_option("--report", report, "Report JSON")->required();

  EngineOptions engine;
  std::string from, to, arrive, format = "table";
  double duration = 60.0;
  auto* rec = app.add_subcommand("recommend", "Recommend parking lots for one trip");
  rec->add_option("--lots", lots_path)->required();
  rec->add_option("--store", store_path)->required();
  rec->add_option("--fares", fares_path)->required();
  rec->add_option("--from", from, "Source as lat,lon")->required();
  rec->add_option("--to", to, "Destination as lat,lon")->required();
  rec->add_option("--arrive", arrive, "Arrival time, ISO-8601")->required();
  rec->add_option("--tau", engine.tau, "Arrival window in minutes");
  rec->add_option("--duration", duration, "Parking duration in minutes");
  rec->add_option("--threshold-likelihood", engine.threshold);
  rec->add_option("--epsilon", engine.epsilon);
  rec->add_option("--top-k", engine.top_k);
  rec->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  add_engine_options(rec, engine);

  std::string queries_path;
  std::size_t runs = 100;
  std::uint64_t seed = 7;
  double px = 500.0;
  auto* compare = app.add_subcommand("compare", "Compare the engine with the greedy proximity baseline");
  compare->add_option("--queries", queries_path, "JSON array of recommend request bodies")->required();
  compare->add_option("--runs", runs);
  compare->add_option("--seed", seed);
  compare->add_option("--px", px, "Greedy proximity threshold in meters");
  compare->add_option("--lots", lots_path)->required()->envname("MOPARKER_LOTS");
  compare->add_option("--store", store_path)->required()->envname("MOPARKER_STORE");
  compare->add_option("--fares", fares_path)->required()->envname("MOPARKER_FARES");
  compare->add_option("--report", report, "Optional report JSON");
  add_engine_options(compare, engine);

  std::string bind = "127.0.0.1:8080";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API over a data snapshot");
  serve_cmd->add_option("--store", store_path)->required()->envname("MOPARKER_STORE");
  serve_cmd->add_option("--lots", lots_path)->required()->envname("MOPARKER_LOTS");
  serve_cmd->add_option("--fares", fares_path)->required()->envname("MOPARKER_FARES");
  serve_cmd->add_option("--bind", bind, "host:port")->envname("MOPARKER_BIND");
  serve_cmd->add_option("--epsilon", engine.epsilon, "Default epsilon")->envname("MOPARKER_EPSILON");
  serve_cmd->add_option("--threshold-likelihood", engine.threshold, "Default likelihood threshold")
      ->envname("MOPARKER_THRESHOLD");
  serve_cmd->add_option("--top-k", engine.top_k, "Default top-k")->envname("MOPARKER_TOP_K");
  serve_cmd->add_option("--tau", engine.tau, "Default arrival window in minutes");
  add_engine_options(serve_cmd, engine);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(input, tz, out, report);
    if (*cluster) return run_cluster(store_path, dmax, out, fare_map);
    if (*evaluate) return run_evaluate(store_path, lots_path, method, horizon, bin, report);

    if (*rec) {
      const Service service(load_snapshot({store_path, lots_path, fares_path}), make_config(engine),
                            make_router(engine));
      const json body = {{"from", parse_point_arg(from, "--from")},
                         {"to", parse_point_arg(to, "--to")},
                         {"arrive", arrive},
                         {"tau_minutes", engine.tau},
                         {"duration_minutes", duration},
                         {"threshold_likelihood", engine.threshold},
                         {"epsilon", engine.epsilon},
                         {"top_k", engine.top_k}};
      const auto response = service.handle_recommend(body.dump());
      if (format == "json" || response.status != 200) {
        std::cout << json::parse(response.body).dump(2) << '\n';
        return response.status == 200 ? 0 : 2;
      }
      const auto doc = json::parse(response.body);
      std::cout << "status: " << doc.at("status").get<std::string>()
                << (doc.at("route_degraded").get<bool>() ? " (routes degraded)" : "") << '\n';
      std::printf("%-10s %10s %9s %8s %10s %9s\n", "lot_id", "travel_min", "walk_km", "fare", "likelihood",
                  "crowding");
      for (const auto& r : doc.at("recommendations")) {
        const auto& o = r.at("objectives");
        const double cd = r.at("crowding").is_string() ? INFINITY : r.at("crowding").get<double>();
        std::printf("%-10s %10.2f %9.3f %8.2f %10.3f %9s\n", r.at("lot_id").get<std::string>().c_str(),
                    o.at("travel_min").get<double>(), o.at("walk_km").get<double>(), o.at("fare").get<double>(),
                    o.at("likelihood").get<double>(), format_crowding(cd).c_str());
      }
      return 0;
    }

    if (*compare) {
      const auto snap = load_snapshot({store_path, lots_path, fares_path});
      const auto config = make_config(engine);
      const auto doc = json::parse(read_file(queries_path));
      if (!doc.is_array()) throw SchemaError("queries file must be a JSON array");
      std::vector<Query> queries;
      for (std::size_t i = 0; i < doc.size(); ++i) {
        std::vector<FieldError> errors;
        int status = 0;
        auto q = parse_recommend_request(doc[i].dump(), config, errors, status);
        if (!q) {
          throw ValidationError("queries[" + std::to_string(i) + "]." + errors.front().field + ": " +
                                errors.front().message);
        }
        queries.push_back(std::move(*q));
      }
      const AnalyticRouter analytic(config.speeds);
      const auto external = make_router(engine);
      const Router& router = external ? *external : static_cast<const Router&>(analytic);
      const RoutingSession session(router, analytic);
      const auto r = compare_baseline(queries, snap->lots, snap->store, snap->fares, session, runs, px, seed);
      json greedy, engine_json;
      for (std::size_t m = 0; m < kObjectives.size(); ++m) {
        greedy[to_string(kObjectives[m])] = r.greedy[m];
        engine_json[to_string(kObjectives[m])] = r.moparker[m];
      }
      const json out_doc = {{"runs", r.runs},       {"queries", r.queries},   {"seed", seed},
                            {"proximity_m", px},    {"greedy", greedy},       {"moparker", engine_json},
                            {"greedy_empty", r.greedy_empty}};
      if (!report.empty()) write_file(report, out_doc.dump(2) + "\n");
      std::cout << out_doc.dump(2) << '\n';
      return 0;
    }

    if (*serve_cmd) {
      const auto [host, port] = parse_bind(bind);
      const Service service(load_snapshot({store_path, lots_path, fares_path}), make_config(engine),
                            make_router(engine));
      HttpServer server(service);
      const int bound = server.bind(host, port);
      std::cout << "listening on " << host << ':' << bound << std::endl;
      server.listen();
      return 0;
    }
  } catch (const moparker::Error& e) {
    std::cerr << "moparker: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "moparker: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
