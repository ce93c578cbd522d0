// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "moparker/error.hpp"

namespace moparker {

namespace {

double seconds_of(Timestamp t) { return static_cast<double>(t.time_since_epoch().count()); }

// Union length, in seconds, of the events clipped to [begin, end).
double occupied_seconds(std::span<const ParkingEvent> events, double begin, double end) {
  std::vector<std::pair<double, double>> spans;
  spans.reserve(events.size());
  for (const auto& e : events) {
    const double a = std::max(begin, seconds_of(e.arrival));
    const double d = std::min(end, seconds_of(e.departure));
    if (d > a) spans.emplace_back(a, d);
  }
  std::sort(spans.begin(), spans.end());
  double total = 0.0;
  double run_start = 0.0;
  double run_end = 0.0;
  bool open = false;
  for (const auto& [a, d] : spans) {
    if (!open) {
      run_start = a;
      run_end = d;
      open = true;
    } else if (a <= run_end) {
      run_end = std::max(run_end, d);
    } else {
      total += run_end - run_start;
      run_start = a;
      run_end = d;
    }
  }
  if (open) total += run_end - run_start;
  return total;
}

double lot_likelihood(const ParkingLot& lot, const EventStore& store, double begin, double end) {
  if (lot.bays.empty()) throw ValidationError("lot " + lot.lot_id + " has no bays");
  double occupied = 0.0;
  for (const auto& bay : lot.bays) {
    const auto events = store.query(bay.bay_id, begin, end);
    occupied += occupied_seconds(events, begin, end) / 60.0;
  }
  const double tau = (end - begin) / 60.0;
  const double n = static_cast<double>(lot.bays.size());
  return std::clamp(1.0 - occupied / (n * tau), 0.0, 1.0);
}

class Persistence final : public OccupancyPredictor {
 public:
  double forecast(std::span<const double> history, std::size_t) const override {
    return history.back();
  }
};

class SeasonalNaive final : public OccupancyPredictor {
 public:
  explicit SeasonalNaive(std::size_t season) : season_(season) {}
  double forecast(std::span<const double> history, std::size_t steps) const override {
    const std::size_t target = history.size() - 1 + steps;
    if (target >= season_ && target - season_ < history.size()) return history[target - season_];
    return history.back();
  }

 private:
  std::size_t season_;
};

class HistoricalMean final : public OccupancyPredictor {
 public:
  explicit HistoricalMean(std::size_t season) : season_(season) {}
  double forecast(std::span<const double> history, std::size_t steps) const override {
    const std::size_t target = history.size() - 1 + steps;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t back = season_; back <= target; back += season_) {
      const std::size_t idx = target - back;
      if (idx < history.size()) {
        sum += history[idx];
        ++count;
      }
    }
    if (count == 0) return history.back();
    return sum / static_cast<double>(count);
  }

 private:
  std::size_t season_;
};

std::size_t whole_bins(double minutes, double bin_minutes, const char* what) {
  const double ratio = minutes / bin_minutes;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9) {
    throw ValidationError(std::string(what) + " must be a positive multiple of the bin length");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

double occupied_time(std::span<const ParkingEvent> events, const TimeWindow& window) {
  return occupied_seconds(events, window.start_seconds(), window.end_seconds()) / 60.0;
}

double occupied_time(const EventStore& store, std::string_view bay_id, const TimeWindow& window) {
  return occupied_time(store.query(bay_id, window), window);
}

double likelihood(const ParkingLot& lot, const EventStore& store, const TimeWindow& window) {
  return lot_likelihood(lot, store, window.start_seconds(), window.end_seconds());
}

OccupancySeries build_series(const ParkingLot& lot, const EventStore& store, double bin_minutes,
                             Timestamp start, Timestamp end) {
  if (!(bin_minutes > 0.0) || !std::isfinite(bin_minutes)) {
    throw ValidationError("bin length must be > 0 minutes");
  }
  if (end < start) throw ValidationError("series end precedes start");
  OccupancySeries series{lot.lot_id, start, bin_minutes, {}};
  const double bin_seconds = bin_minutes * 60.0;
  const double origin = seconds_of(start);
  const auto bins = static_cast<std::size_t>(std::floor((seconds_of(end) - origin) / bin_seconds));
  series.values.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double begin = origin + static_cast<double>(k) * bin_seconds;
    series.values.push_back(1.0 - lot_likelihood(lot, store, begin, begin + bin_seconds));
  }
  return series;
}

const char* to_string(PredictMethod method) {
  switch (method) {
    case PredictMethod::HistoricalMean:
      return "historical-mean";
    case PredictMethod::SeasonalNaive:
      return "seasonal-naive";
    case PredictMethod::Persistence:
      return "persistence";
  }
  return "unknown";
}

PredictMethod parse_predict_method(std::string_view name) {
  if (name == "historical-mean") return PredictMethod::HistoricalMean;
  if (name == "seasonal-naive") return PredictMethod::SeasonalNaive;
  if (name == "persistence") return PredictMethod::Persistence;
  throw ValidationError("unknown prediction method: " + std::string(name));
}

std::unique_ptr<OccupancyPredictor> make_predictor(PredictMethod method, std::size_t season_bins) {
  if (season_bins == 0) throw ValidationError("season must span at least one bin");
  switch (method) {
    case PredictMethod::HistoricalMean:
      return std::make_unique<HistoricalMean>(season_bins);
    case PredictMethod::SeasonalNaive:
      return std::make_unique<SeasonalNaive>(season_bins);
    case PredictMethod::Persistence:
      return std::make_unique<Persistence>();
  }
  throw ValidationError("unknown prediction method");
}

double predict(const OccupancySeries& series, double horizon_minutes, PredictMethod method,
               double season_minutes) {
  if (series.values.empty()) throw ValidationError("cannot predict from an empty series");
  const std::size_t steps = whole_bins(horizon_minutes, series.bin_minutes, "horizon");
  const std::size_t season = whole_bins(season_minutes, series.bin_minutes, "season");
  const auto predictor = make_predictor(method, season);
  return std::clamp(predictor->forecast(series.values, steps), 0.0, 1.0);
}

ErrorMetrics error_metrics(std::span<const double> errors) {
  if (errors.empty()) throw ValidationError("no errors to summarize");
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (const double e : errors) {
    abs_sum += std::abs(e);
    sq_sum += e * e;
  }
  const auto n = static_cast<double>(errors.size());
  return ErrorMetrics{abs_sum / n, std::sqrt(sq_sum / n)};
}

PredictorEval evaluate_predictor(const OccupancySeries& series, PredictMethod method,
                                 double horizon_minutes, const EvalOptions& options) {
  const std::size_t n = series.values.size();
  if (n == 0) throw ValidationError("cannot evaluate on an empty series");
  const std::size_t steps = whole_bins(horizon_minutes, series.bin_minutes, "horizon");
  const std::size_t season = whole_bins(options.season_minutes, series.bin_minutes, "season");
  std::size_t warmup = options.warmup_bins;
  if (warmup == 0) warmup = (n > season + steps) ? season : std::max<std::size_t>(1, n / 2);

  if (n < warmup + steps + 1) {
    throw ValidationError("series too short: fewer than 2 usable forecast points");
  }
  const std::size_t origins = n - steps - warmup + 1;

  const auto predictor = make_predictor(method, season);
  const std::span<const double> values(series.values);
  std::vector<double> errors;
  errors.reserve(origins);
  for (std::size_t o = warmup - 1; o + steps < n; ++o) {
    const double forecast = std::clamp(predictor->forecast(values.first(o + 1), steps), 0.0, 1.0);
    errors.push_back(forecast - values[o + steps]);
  }
  const auto metrics = error_metrics(errors);
  return PredictorEval{metrics.mae, metrics.rmse, horizon_minutes, errors.size()};
}

}  // namespace moparker
