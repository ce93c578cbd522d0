// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "moparker/api.hpp"
#include "moparker/error.hpp"
#include "moparker/fares.hpp"
#include "moparker/geo.hpp"
#include "moparker/ingest.hpp"
#include "moparker/lots.hpp"
#include "moparker/pareto.hpp"

namespace py = pybind11;
using namespace moparker;

namespace {

using PyVector = std::tuple<double, double, double, double>;  // travel_min, walk_km, fare, likelihood
using PyCandidate = std::pair<std::string, PyVector>;

std::vector<Candidate> to_candidates(const std::vector<PyCandidate>& in) {
  std::vector<Candidate> out;
  out.reserve(in.size());
  for (const auto& [id, v] : in) {
    out.push_back({id, {std::get<0>(v), std::get<1>(v), std::get<2>(v), std::get<3>(v)}});
  }
  return out;
}

std::vector<std::string> ids(const std::vector<Candidate>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.lot_id);
  return out;
}

ObjectiveThresholds thresholds(std::optional<double> travel, std::optional<double> walk,
                               std::optional<double> fare, std::optional<double> likelihood) {
  return {travel, walk, fare, likelihood};
}

// Owns a loaded snapshot and the service answering from it.
class Engine {
 public:
  Engine(const std::filesystem::path& store, const std::filesystem::path& lots, const std::filesystem::path& fares,
         const std::string& tz, double drive_kmh, double walk_kmh)
      : service_(std::make_shared<const Snapshot>(
                     Snapshot{load_event_store(store), load_lot_db(lots), load_fare_book(fares)}),
                 make_config(tz, drive_kmh, walk_kmh)) {}

  std::pair<int, std::string> recommend(const std::string& body) const {
    py::gil_scoped_release release;
    const auto r = service_.handle_recommend(body);
    return {r.status, r.body};
  }
  std::pair<int, std::string> lots() const {
    const auto r = service_.handle_lots();
    return {r.status, r.body};
  }
  std::pair<int, std::string> likelihood(const std::string& lot_id, std::optional<std::string> at,
                                         std::optional<std::string> tau,
                                         std::optional<std::string> method) const {
    const auto r = service_.handle_likelihood(lot_id, std::move(at), std::move(tau), std::move(method));
    return {r.status, r.body};
  }

 private:
  static ServiceConfig make_config(const std::string& tz, double drive_kmh, double walk_kmh) {
    ServiceConfig c;
    c.zone = TimeZone(tz);
    c.speeds = SpeedModel(drive_kmh, walk_kmh);
    return c;
  }

  Service service_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-objective parking recommendation engine";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "haversine_distance",
      [](std::pair<double, double> a, std::pair<double, double> b) {
        return haversine_distance({a.first, a.second}, {b.first, b.second});
      },
      py::arg("a"), py::arg("b"), "Great-circle distance in meters between (lat, lon) pairs.");

  m.def(
      "naive_front", [](const std::vector<PyCandidate>& c) { return ids(naive_front(to_candidates(c))); },
      py::arg("candidates"), "Lot ids of the Pareto front of (lot_id, (T, W, F, L)) candidates.");

  m.def(
      "epsilon_front",
      [](const std::vector<PyCandidate>& c, double eps) { return ids(epsilon_front(to_candidates(c), eps)); },
      py::arg("candidates"), py::arg("epsilon"), "Lot ids of the epsilon-nondominated front.");

  m.def(
      "crowding_distances",
      [](const std::vector<PyCandidate>& c, std::optional<double> max_travel_minutes,
         std::optional<double> max_walk_km, std::optional<double> max_fare,
         std::optional<double> min_likelihood) {
        const auto cs = to_candidates(c);
        return crowding_distances(cs, thresholds(max_travel_minutes, max_walk_km, max_fare, min_likelihood))
            .distance;
      },
      py::arg("front"), py::arg("max_travel_minutes") = py::none(), py::arg("max_walk_km") = py::none(),
      py::arg("max_fare") = py::none(), py::arg("min_likelihood") = py::none(),
      "Crowding distance per lot id over the members that pass the thresholds.");

  m.def(
      "recommend_candidates",
      [](const std::vector<PyCandidate>& c, double min_likelihood, double epsilon, std::size_t top_k) {
        const auto r = recommend_candidates(to_candidates(c), thresholds({}, {}, {}, min_likelihood),
                                            epsilon, top_k);
        py::dict out;
        out["status"] = to_string(r.status);
        out["members"] = ids(r.members);
        out["crowding"] = r.crowding;
        out["selected"] = r.selected;
        return out;
      },
      py::arg("candidates"), py::arg("min_likelihood") = 0.7, py::arg("epsilon") = 0.01,
      py::arg("top_k") = 5, "Threshold filter, epsilon front, crowding and top-k over candidates.");

  m.def(
      "ingest",
      [](const std::filesystem::path& input, const std::filesystem::path& out, const std::string& tz) {
        const auto result = parse_events_file(input, TimeZone(tz));
        save_event_store(out, EventStore(result.events));
        return std::make_tuple(result.report.accepted, result.report.rejected, result.report.reject_reasons);
      },
      py::arg("input"), py::arg("out"), py::arg("tz") = "UTC",
      "Parses an event log into a store; returns (accepted, rejected, [(line, reason)]).");

  m.def(
      "cluster",
      [](const std::filesystem::path& store, const std::filesystem::path& out, double dmax) {
        const auto lots = cluster_bays(bays_from_events(load_event_store(store)), dmax);
        save_lots(out, lots);
        return lots.size();
      },
      py::arg("store"), py::arg("out"), py::arg("dmax") = 10.0, "Clusters bays into lots; returns the lot count.");

  py::class_<Engine>(m, "Engine")
      .def(py::init<const std::filesystem::path&, const std::filesystem::path&, const std::filesystem::path&,
                    const std::string&, double, double>(),
           py::arg("store"), py::arg("lots"), py::arg("fares"), py::arg("tz") = "UTC",
           py::arg("drive_kmh") = 30.0, py::arg("walk_kmh") = 5.0)
      .def("recommend", &Engine::recommend, py::arg("body"), "Returns (http status, JSON body).")
      .def("lots", &Engine::lots)
      .def("likelihood", &Engine::likelihood, py::arg("lot_id"), py::arg("at") = py::none(),
           py::arg("tau") = py::none(), py::arg("method") = py::none());
}
