#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "officelab/random.hpp"
#include "officelab/types.hpp"

namespace officelab {

struct TrajectoryRecord;

enum class SensorKind { camera, tag_reader, biometric };

std::string_view to_string(SensorKind kind);
SensorKind parse_sensor_kind(std::string_view name);

/// Abstract per-location detector. Camera fields of view and reader ranges
/// are both expressed as coverage sets of location bins.
struct SensorSpec {
  SensorId id = 0;
  SensorKind kind = SensorKind::camera;
  /// Covered locations, sorted and unique.
  std::vector<LocationId> coverage;
  double p_detect = 0.9;
  double p_false_positive = 0.01;
  double p_confuse = 0.05;

  bool covers(LocationId loc) const;

  friend bool operator==(const SensorSpec&, const SensorSpec&) = default;
};

/// A single (possibly wrong) sensor report.
struct ObservationEvent {
  SensorId sensor = 0;
  int day = 0;
  int tick = 0;
  AgentId reported_agent = 0;
  LocationId location = 0;

  friend bool operator==(const ObservationEvent&,
                         const ObservationEvent&) = default;
};

/// Reports produced by `sensors` for one tick of ground truth.
///
/// `agents[i]` is truly at `truth[i]`. For every sensor and every agent inside
/// its coverage a detection fires with p_detect; a firing detection reports a
/// uniformly chosen other agent with p_confuse. Independently each sensor emits
/// one false positive (random agent, random covered location) with
/// p_false_positive. Every sensor/agent pair consumes a fixed number of draws,
/// so two sensor settings driven by the same stream see common random numbers.
///
/// Events come back ordered by sensor id, then agent order, false positive last.
std::vector<ObservationEvent> observe_tick(std::span<const AgentId> agents,
                                           std::span<const LocationId> truth,
                                           std::span<const SensorSpec> sensors,
                                           RandomStream& rng, int day = 0,
                                           int tick = 0);

/// Runs observe_tick over every (day, tick) in `records`. Each day draws from
/// its own stream derived from `seed`. Output is ordered by (day, tick, sensor).
std::vector<ObservationEvent> generate_event_log(
    std::span<const TrajectoryRecord> records,
    std::span<const SensorSpec> sensors, std::uint64_t seed);

}  // namespace officelab
