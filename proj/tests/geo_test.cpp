// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "moparker/error.hpp"
#include "moparker/geo.hpp"
#include "support/oracles.hpp"

namespace moparker {
namespace {

GeoPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lat(-80.0, 80.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  return {lat(rng), lon(rng)};
}

TEST(GeoPoint, RejectsOutOfRange) {
  EXPECT_THROW(GeoPoint(90.5, 0), ValidationError);
  EXPECT_THROW(GeoPoint(-91, 0), ValidationError);
  EXPECT_THROW(GeoPoint(0, 180.01), ValidationError);
  EXPECT_NO_THROW(GeoPoint(-90, 180));
}

TEST(SpeedModel, RequiresPositiveSpeeds) {
  EXPECT_THROW(SpeedModel(0, 5), ValidationError);
  EXPECT_THROW(SpeedModel(30, -1), ValidationError);
  const SpeedModel d;
  EXPECT_EQ(d.drive_kmh(), 30.0);
  EXPECT_EQ(d.walk_kmh(), 5.0);
}

TEST(Haversine, KnownValues) {
  const GeoPoint p(-37.81, 144.96);
  EXPECT_EQ(haversine_distance(p, p), 0.0);
  EXPECT_NEAR(haversine_distance({0, 0}, {0, 1}), 111194.92664455874, 1e-6);
  EXPECT_NEAR(haversine_distance({-37.8098, 144.9652}, {-37.8076, 144.9733}), 752.4670192590147, 1e-6);
}

TEST(Haversine, MatchesChordFormula) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_point(rng);
    const auto b = random_point(rng);
    const double d = haversine_distance(a, b);
    EXPECT_NEAR(d, oracle::chord_distance(a, b), 1e-6 * std::max(1.0, d));
  }
}

TEST(Haversine, SymmetryAndTriangle) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_point(rng);
    const auto b = random_point(rng);
    const auto c = random_point(rng);
    const double ab = haversine_distance(a, b);
    EXPECT_EQ(ab, haversine_distance(b, a));
    EXPECT_GE(ab, 0.0);
    const double ac = haversine_distance(a, c);
    const double cb = haversine_distance(c, b);
    EXPECT_LE(ab, (ac + cb) * (1.0 + 1e-6));
  }
}

TEST(TravelMinutes, Arithmetic) {
  const GeoPoint p(-37.81, 144.96);
  EXPECT_EQ(travel_minutes(p, p, 30), 0.0);
  EXPECT_DOUBLE_EQ(minutes_for_distance(5000, 30), 10.0);
  EXPECT_DOUBLE_EQ(minutes_for_distance(2100, 5), 25.2);
  EXPECT_THROW(travel_minutes(p, p, 0), ValidationError);
  EXPECT_THROW(minutes_for_distance(10, -2), ValidationError);
}

TEST(TravelMinutes, LinearInInverseSpeed) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_point(rng);
    const auto b = random_point(rng);
    const double base = travel_minutes(a, b, 10.0);
    EXPECT_NEAR(travel_minutes(a, b, 20.0), base / 2.0, 1e-9 * std::max(1.0, base));
    EXPECT_NEAR(travel_minutes(a, b, 2.5), base * 4.0, 1e-9 * std::max(1.0, base));
    EXPECT_NEAR(base, haversine_distance(a, b) / 1000.0 / 10.0 * 60.0, 1e-9 * std::max(1.0, base));
  }
}

TEST(Units, KilometersRoundedToMeters) {
  EXPECT_EQ(meters_to_km_rounded(399.6), 0.4);
  EXPECT_EQ(meters_to_km_rounded(1234.4), 1.234);
  EXPECT_EQ(meters_to_km_rounded(0.0), 0.0);
}

}  // namespace
}  // namespace moparker
