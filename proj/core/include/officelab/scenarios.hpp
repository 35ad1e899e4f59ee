#pragma once

#include <cstdint>

#include "officelab/config.hpp"

// Synthetic worlds. None of the numbers here come from measured office data.
namespace officelab::scenarios {

/// 50-bin floor: a 10-bin corridor spine with 4 rooms off each corridor bin
/// (30 offices, 4 meeting rooms, 2 printers, 2 lunch areas, 2 other rooms),
/// 10 agents in four departments, and 30 cameras + 90 tag readers.
WorldConfig office50(std::uint64_t seed = 1, int ticks_per_day = 480,
                     int days = 1);

/// Small floor for demos and end-to-end tests: 12 bins, 4 agents, 3 days.
WorldConfig demo(std::uint64_t seed = 7);

/// A single agent over a 5-day week. Days 0-3 follow the routine (morning
/// meeting in room A, lunch); day 4 replaces it with an all-day workshop in
/// room B.
WorldConfig unusual_week(std::uint64_t seed);

/// Sensors with the given quality covering every location with exactly one
/// per-location detector.
std::vector<SensorSpec> full_coverage_sensors(const FloorPlan& plan,
                                              double p_detect,
                                              double p_false_positive,
                                              double p_confuse);

}  // namespace officelab::scenarios
