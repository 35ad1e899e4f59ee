#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "officelab/types.hpp"

namespace officelab {

/// One location bin of the floor.
struct Location {
  std::string name;
  Tag tag = Tag::other;
  /// The office's owner, if the bin is somebody's home office.
  std::optional<AgentId> owner;

  friend bool operator==(const Location&, const Location&) = default;
};

/// Discrete office floor: location bins, an undirected adjacency relation
/// and semantic tags. Immutable once built.
///
/// Construction checks ids, symmetry and irreflexivity. Connectivity is a
/// config-level invariant (see validate_world); a disconnected plan can be
/// built so that shortest_path's no-path error stays reachable.
class FloorPlan {
 public:
  FloorPlan() = default;
  FloorPlan(std::vector<Location> locations,
            std::vector<std::pair<LocationId, LocationId>> edges);

  std::size_t size() const { return locations_.size(); }
  bool contains(LocationId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < locations_.size();
  }

  const Location& location(LocationId id) const { return locations_.at(id); }
  const std::vector<Location>& locations() const { return locations_; }
  Tag tag(LocationId id) const { return locations_.at(id).tag; }

  /// Neighbours of `id`, ascending.
  std::span<const LocationId> neighbors(LocationId id) const {
    return neighbors_.at(id);
  }
  bool adjacent(LocationId a, LocationId b) const;

  /// Undirected edges as (low, high) pairs, sorted.
  std::vector<std::pair<LocationId, LocationId>> edges() const;

  bool is_connected() const;

  /// Hop distance, or -1 when unreachable.
  int distance(LocationId from, LocationId to) const;

  /// First waypoint of the canonical shortest path from `from` to `to`:
  /// the lowest-id neighbour one hop closer to `to`. Returns `from` when
  /// from == to and -1 when unreachable.
  LocationId next_hop(LocationId from, LocationId to) const;

  friend bool operator==(const FloorPlan& a, const FloorPlan& b) {
    return a.locations_ == b.locations_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::vector<Location> locations_;
  std::vector<std::vector<LocationId>> neighbors_;
  std::vector<int> dist_;  // row-major all-pairs hop distances
};

/// Minimum-hop path from `from` to `to`, inclusive of both endpoints. Ties
/// resolve to the lexicographically smallest path (lowest next id first).
/// Throws NoPathError when `to` is unreachable, InvalidArgument for unknown ids.
std::vector<LocationId> shortest_path(const FloorPlan& plan, LocationId from,
                                      LocationId to);

/// A scheduled activity: during [start_tick, end_tick) of the listed days,
/// every move decision heads for `target` with `probability`.
struct ScheduleEvent {
  int start_tick = 0;
  int end_tick = 0;
  LocationId target = 0;
  double probability = 1.0;
  std::string label;
  /// Day indices on which the event applies; empty means every day.
  std::vector<int> days;

  bool active(int day, int tick) const;

  friend bool operator==(const ScheduleEvent&, const ScheduleEvent&) = default;
};

/// One simulated person.
struct AgentProfile {
  AgentId id = 0;
  LocationId home = 0;
  std::string department = "Other";
  /// Per-location stay probability, fully resolved (one entry per location).
  std::vector<double> stay_prob;
  /// The fallback stay probability the per-location table was resolved from.
  double default_stay = 0.5;
  /// Destination distribution, dense over locations.
  std::vector<double> destinations;
  /// Stay-probability increment per co-present agent.
  double delta_p = 0.0;
  std::vector<ScheduleEvent> schedule;

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

/// The active schedule event for (day, tick): earliest start wins, then the
/// lowest target id. nullptr when none is active.
const ScheduleEvent* active_event(const AgentProfile& agent, int day, int tick);

}  // namespace officelab
