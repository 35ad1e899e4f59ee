#include "officelab/simulator.hpp"

#include <algorithm>

namespace officelab {
namespace {

std::deque<LocationId> path_tail(const FloorPlan& plan, LocationId from,
                                 LocationId to) {
  const auto path = shortest_path(plan, from, to);
  return {path.begin() + 1, path.end()};
}

}  // namespace

double effective_stay_probability(const AgentProfile& profile, LocationId loc,
                                  int co_present) {
  return std::min(1.0, profile.stay_prob[loc] + co_present * profile.delta_p);
}

AgentState step_agent(AgentState state, const AgentProfile& profile,
                      const FloorPlan& plan, int co_present,
                      const StepContext& context) {
  if (!state.pending_path.empty()) {
    const LocationId target = state.pending_path.back();
    if (state.rng.bernoulli(context.fluctuation_rate)) {
      const auto nbrs = plan.neighbors(state.location);
      state.location = nbrs[state.rng.index(nbrs.size())];
      state.pending_path = path_tail(plan, state.location, target);
    } else {
      state.location = state.pending_path.front();
      state.pending_path.pop_front();
    }
    return state;
  }

  const double stay =
      effective_stay_probability(profile, state.location, co_present);
  if (state.rng.bernoulli(stay)) return state;

  LocationId target;
  const ScheduleEvent* event = active_event(profile, context.day, context.tick);
  if (event && state.rng.bernoulli(event->probability))
    target = event->target;
  else
    target = static_cast<LocationId>(
        state.rng.categorical(profile.destinations));
  state.pending_path = path_tail(plan, state.location, target);
  return state;
}

std::vector<TrajectoryRecord> run_simulation(const WorldConfig& config) {
  const auto& plan = config.floor_plan;
  const std::size_t count = config.agents.size();

  std::vector<AgentState> states(count);
  for (std::size_t i = 0; i < count; ++i) {
    states[i].agent = config.agents[i].id;
    states[i].rng = RandomStream(
        derive_seed(config.rng_seed, "simulate",
                    static_cast<std::uint64_t>(config.agents[i].id)));
  }

  std::vector<TrajectoryRecord> records;
  records.reserve(count * static_cast<std::size_t>(config.ticks_per_day) *
                  static_cast<std::size_t>(config.days));
  std::vector<int> occupancy(plan.size(), 0);

  for (int day = 0; day < config.days; ++day) {
    for (std::size_t i = 0; i < count; ++i) {
      states[i].location = config.agents[i].home;
      states[i].pending_path.clear();
    }
    for (int tick = 0; tick < config.ticks_per_day; ++tick) {
      std::fill(occupancy.begin(), occupancy.end(), 0);
      for (const auto& s : states) {
        records.push_back({s.agent, day, tick, s.location});
        ++occupancy[s.location];
      }
      if (tick + 1 == config.ticks_per_day) break;
      // Synchronous update: co-presence is read from the tick's snapshot.
      const StepContext context{day, tick, config.fluctuation_rate};
      for (std::size_t i = 0; i < count; ++i) {
        const int others = occupancy[states[i].location] - 1;
        states[i] = step_agent(std::move(states[i]), config.agents[i], plan,
                               others, context);
      }
    }
  }
  return records;
}

}  // namespace officelab
