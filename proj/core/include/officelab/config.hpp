#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "officelab/contacts.hpp"
#include "officelab/sensors.hpp"
#include "officelab/world.hpp"

namespace officelab {

enum class MotionPrior {
  /// Location kernel lumped from the simulator's own dynamics.
  simulator,
  /// Uniform over staying and each adjacent location.
  adjacent,
};

struct FusionSettings {
  MotionPrior motion = MotionPrior::simulator;
  /// Weight of the uniform-adjacent kernel blended into the simulator prior so
  /// every adjacent move keeps positive probability.
  double adjacency_blend = 1e-3;
};

struct AnalyticsSettings {
  double baseline_alpha = 1.0;
  double day_alpha = 0.0;
  int min_support = 2;
  int min_len = 2;
  int max_len = 4;
};

/// Everything a run needs. Immutable after load_config.
struct WorldConfig {
  FloorPlan floor_plan;
  std::vector<AgentProfile> agents;
  int ticks_per_day = 1;
  int days = 1;
  std::uint64_t rng_seed = 0;

  /// Per-step probability that a walking agent detours to a random neighbour.
  double fluctuation_rate = 0.05;
  /// Enforce stay_prob[home] >= default_stay for every agent.
  bool require_home_stickiness = true;

  std::vector<SensorSpec> sensors;
  FusionSettings fusion;
  AnalyticsSettings analytics;
  ContactRule contacts;
  std::size_t top_k_hubs = 5;

  /// Position of `id` in `agents`; throws InvalidArgument when unknown.
  std::size_t agent_index(AgentId id) const;
  std::vector<AgentId> agent_ids() const;
};

/// Checks every world invariant; throws ConfigError naming the first violation.
void validate_world(const WorldConfig& config);

/// Parses and validates a config document.
WorldConfig parse_config(std::string_view text);
WorldConfig load_config(const std::filesystem::path& path);

/// Serialises a config. parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const WorldConfig& config);
void save_config(const WorldConfig& config, const std::filesystem::path& path);

}  // namespace officelab
