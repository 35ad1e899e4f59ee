#include "officelab/sensors.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "officelab/simulator.hpp"

namespace officelab {
namespace {

constexpr std::array<std::pair<SensorKind, std::string_view>, 3> kKindNames{{
    {SensorKind::camera, "camera"},
    {SensorKind::tag_reader, "tag_reader"},
    {SensorKind::biometric, "biometric"},
}};

}  // namespace

std::string_view to_string(SensorKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "camera";
}

SensorKind parse_sensor_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw ConfigError(fmt::format("unknown sensor kind \"{}\"", name));
}

bool SensorSpec::covers(LocationId loc) const {
  return std::binary_search(coverage.begin(), coverage.end(), loc);
}

std::vector<ObservationEvent> observe_tick(std::span<const AgentId> agents,
                                           std::span<const LocationId> truth,
                                           std::span<const SensorSpec> sensors,
                                           RandomStream& rng, int day,
                                           int tick) {
  if (agents.size() != truth.size())
    throw InvalidArgument("observe_tick: truth must list one location per agent");
  std::vector<ObservationEvent> events;
  const std::size_t population = agents.size();

  std::vector<std::size_t> order(sensors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sensors[a].id < sensors[b].id;
  });

  for (std::size_t si : order) {
    const auto& s = sensors[si];
    for (std::size_t a = 0; a < population; ++a) {
      if (!s.covers(truth[a])) continue;
      // Fixed draw budget per (sensor, agent): detect, confuse, swap target.
      const double u_detect = rng.uniform();
      const double u_confuse = rng.uniform();
      const double u_swap = rng.uniform();
      if (u_detect >= s.p_detect) continue;
      AgentId reported = agents[a];
      if (population > 1 && u_confuse < s.p_confuse) {
        auto other = static_cast<std::size_t>(
            u_swap * static_cast<double>(population - 1));
        other = std::min(other, population - 2);
        if (other >= a) ++other;
        reported = agents[other];
      }
      events.push_back({s.id, day, tick, reported, truth[a]});
    }
    const double u_fp = rng.uniform();
    const double u_agent = rng.uniform();
    const double u_loc = rng.uniform();
    if (population > 0 && u_fp < s.p_false_positive) {
      auto who = std::min(static_cast<std::size_t>(u_agent * population),
                          population - 1);
      auto where = std::min(
          static_cast<std::size_t>(u_loc * static_cast<double>(s.coverage.size())),
          s.coverage.size() - 1);
      events.push_back({s.id, day, tick, agents[who], s.coverage[where]});
    }
  }
  return events;
}

std::vector<ObservationEvent> generate_event_log(
    std::span<const TrajectoryRecord> records,
    std::span<const SensorSpec> sensors, std::uint64_t seed) {
  std::set<AgentId> known;
  for (const auto& r : records) known.insert(r.agent);
  const std::vector<AgentId> agents(known.begin(), known.end());

  // (day, tick) -> location per agent (ascending agent id)
  std::map<std::pair<int, int>, std::vector<LocationId>> frames;
  std::map<AgentId, std::size_t> slot;
  for (std::size_t i = 0; i < agents.size(); ++i) slot[agents[i]] = i;
  for (const auto& r : records) {
    auto& frame = frames[{r.day, r.tick}];
    if (frame.empty()) frame.assign(agents.size(), -1);
    frame[slot[r.agent]] = r.location;
  }

  std::vector<ObservationEvent> log;
  int current_day = -1;
  RandomStream rng;
  for (const auto& [key, frame] : frames) {
    const auto [day, tick] = key;
    if (day != current_day) {
      current_day = day;
      rng = RandomStream(derive_seed(seed, "observe", static_cast<std::uint64_t>(day)));
    }
    if (std::find(frame.begin(), frame.end(), -1) != frame.end())
      throw InvalidArgument(fmt::format(
          "trajectory records are missing an agent at day {} tick {}", day, tick));
    auto events = observe_tick(agents, frame, sensors, rng, day, tick);
    log.insert(log.end(), events.begin(), events.end());
  }
  return log;
}

}  // namespace officelab
