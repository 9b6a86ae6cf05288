#pragma once

#include <string>

#include "flatflight/aero.hpp"

namespace flatflight {

// Unit conversion factors used at file ingestion (and by the scenario
// expression grammar for its kt/deg/ft suffixes).
namespace units {
inline constexpr double kt = 0.514444;        // knots -> m/s
inline constexpr double ft = 0.3048;          // feet -> m
inline constexpr double lb = 0.45359237;      // pounds -> kg
inline constexpr double slug_ft2 = 1.35581795; // slug*ft^2 -> kg*m^2
inline constexpr double ft2 = 0.09290304;     // ft^2 -> m^2
inline constexpr double deg = 0.017453292519943295; // degrees -> rad
} // namespace units

// Loads an aircraft coefficient file (JSON). Source units are declared in the
// file and converted to SI once here; unknown keys are rejected.
AircraftParams load_aircraft(const std::string& path);

} // namespace flatflight
