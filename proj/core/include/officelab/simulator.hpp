#pragma once

#include <deque>
#include <vector>

#include "officelab/config.hpp"
#include "officelab/random.hpp"
#include "officelab/world.hpp"

namespace officelab {

/// Mutable per-agent simulation state.
struct AgentState {
  AgentId agent = 0;
  LocationId location = 0;
  /// Remaining waypoints; the front is adjacent to `location`.
  std::deque<LocationId> pending_path;
  RandomStream rng;
};

struct TrajectoryRecord {
  AgentId agent = 0;
  int day = 0;
  int tick = 0;
  LocationId location = 0;

  friend bool operator==(const TrajectoryRecord&,
                         const TrajectoryRecord&) = default;
};

/// Context for one step that is shared by all agents.
struct StepContext {
  int day = 0;
  int tick = 0;
  double fluctuation_rate = 0.05;
};

/// Advances one agent by one tick.
///
/// Walking agents take the next waypoint, or with fluctuation_rate step to a
/// uniformly random neighbour and re-plan to the same target. Idle agents
/// stay with min(1, stay_prob + co_present * delta_p); otherwise the active
/// schedule event (if any) claims the move with its probability, else a
/// destination is drawn. The decision tick itself does not move: it sets
/// pending_path to the shortest path's tail.
AgentState step_agent(AgentState state, const AgentProfile& profile,
                      const FloorPlan& plan, int co_present,
                      const StepContext& context);

/// Effective stay probability of an idle agent with `co_present` company.
double effective_stay_probability(const AgentProfile& profile, LocationId loc,
                                  int co_present);

/// Runs the whole world. Agents start every day idle at home; each agent
/// draws from its own stream derived from rng_seed, so adding an agent does
/// not change the draws of the others. Records are ordered by
/// (day, tick, agent position in config).
std::vector<TrajectoryRecord> run_simulation(const WorldConfig& config);

}  // namespace officelab
