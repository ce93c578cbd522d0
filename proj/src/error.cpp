// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/error.hpp"

namespace moparker {

const char* to_string(TravelMode mode) {
  switch (mode) {
    case TravelMode::Drive:
      return "drive";
    case TravelMode::Walk:
      return "walk";
  }
  return "unknown";
}

RoutingError::RoutingError(TravelMode leg, const std::string& what)
    : Error(std::string(to_string(leg)) + " leg: " + what), leg_(leg) {}

}  // namespace moparker
