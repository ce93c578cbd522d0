// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace moparker {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or domain bound.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input text does not follow the expected layout (CSV header, JSON document shape).
class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A referenced configuration object (fare schedule, time zone) is missing or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class TravelMode { Drive, Walk };

const char* to_string(TravelMode mode);

/// A router could not produce a leg. Carries which leg failed.
class RoutingError : public Error {
 public:
  RoutingError(TravelMode leg, const std::string& what);
  TravelMode leg() const noexcept { return leg_; }

 private:
  TravelMode leg_;
};

}  // namespace moparker
