// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moparker/ingest.hpp"
#include "moparker/lots.hpp"
#include "moparker/time.hpp"

namespace moparker {

/// Length, in minutes, of the union of event intervals clipped to the window.
/// Overlapping events are merged, so the result is in [0, window length].
double occupied_time(std::span<const ParkingEvent> events, const TimeWindow& window);
double occupied_time(const EventStore& store, std::string_view bay_id, const TimeWindow& window);

/// Availability likelihood of a lot over a window:
///   1 - (sum of per-bay occupied minutes) / (bays * window minutes).
double likelihood(const ParkingLot& lot, const EventStore& store, const TimeWindow& window);

/// Per-lot occupancy fractions over contiguous bins starting at `start`.
struct OccupancySeries {
  std::string lot_id;
  Timestamp start;
  double bin_minutes = 0.0;
  std::vector<double> values;  // each in [0, 1]

  std::size_t size() const noexcept { return values.size(); }
};

/// values[k] = 1 - likelihood over [start + k*bin, start + (k+1)*bin), for
/// every whole bin inside [start, end). Throws ValidationError on bin <= 0 or end < start.
OccupancySeries build_series(const ParkingLot& lot, const EventStore& store, double bin_minutes,
                             Timestamp start, Timestamp end);

enum class PredictMethod { HistoricalMean, SeasonalNaive, Persistence };

const char* to_string(PredictMethod method);
/// Accepts "historical-mean", "seasonal-naive", "persistence". Throws ValidationError.
PredictMethod parse_predict_method(std::string_view name);

inline constexpr double kDefaultSeasonMinutes = 24.0 * 60.0;

/// Forecasts the occupancy fraction `steps` bins past the end of `history`.
/// This is the plug-point for learned models; the built-in baselines follow.
class OccupancyPredictor {
 public:
  virtual ~OccupancyPredictor() = default;
  virtual double forecast(std::span<const double> history, std::size_t steps) const = 0;
};

/// `season_bins` is the seasonal period expressed in bins (a day by default).
std::unique_ptr<OccupancyPredictor> make_predictor(PredictMethod method, std::size_t season_bins);

/// Forecast for the bin `horizon_minutes` after the series end, clamped to
/// [0, 1]. The horizon must be a positive whole multiple of the bin length.
/// Throws ValidationError on an empty series or a bad horizon.
double predict(const OccupancySeries& series, double horizon_minutes, PredictMethod method,
               double season_minutes = kDefaultSeasonMinutes);

struct ErrorMetrics {
  double mae = 0.0;
  double rmse = 0.0;
};

/// MAE and RMSE of an error vector. Throws ValidationError when empty.
ErrorMetrics error_metrics(std::span<const double> errors);

struct PredictorEval {
  double mae = 0.0;
  double rmse = 0.0;
  double horizon_minutes = 0.0;
  std::size_t points = 0;
};

struct EvalOptions {
  double season_minutes = kDefaultSeasonMinutes;
  /// Bins of history required before the first forecast origin; by default
  /// one season, or half the series when it is shorter than a season.
  std::size_t warmup_bins = 0;
};

/// Rolling-origin evaluation: every origin o in [warmup-1, n-1-h] forecasts
/// value[o+h] from value[0..o]. Throws ValidationError with fewer than 2 origins.
PredictorEval evaluate_predictor(const OccupancySeries& series, PredictMethod method,
                                 double horizon_minutes, const EvalOptions& options = {});

}  // namespace moparker
