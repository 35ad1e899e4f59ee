#pragma once

#include <random>
#include <string>
#include <vector>

#include "officelab/config.hpp"
#include "officelab/world.hpp"

namespace testing_support {

using namespace officelab;

inline FloorPlan make_plan(std::size_t n,
                           std::vector<std::pair<LocationId, LocationId>> edges,
                           std::vector<Tag> tags = {}) {
  std::vector<Location> locs(n);
  for (std::size_t i = 0; i < n; ++i) {
    locs[i].name = "L" + std::to_string(i);
    locs[i].tag = i < tags.size() ? tags[i] : Tag::other;
  }
  return FloorPlan(std::move(locs), std::move(edges));
}

inline FloorPlan line_plan(std::size_t n) {
  std::vector<std::pair<LocationId, LocationId>> edges;
  for (std::size_t i = 1; i < n; ++i)
    edges.emplace_back(static_cast<LocationId>(i - 1), static_cast<LocationId>(i));
  return make_plan(n, edges);
}

inline AgentProfile make_agent(AgentId id, LocationId home, std::size_t n,
                               double stay, std::vector<double> destinations = {}) {
  AgentProfile a;
  a.id = id;
  a.home = home;
  a.default_stay = stay;
  a.stay_prob.assign(n, stay);
  if (destinations.empty()) destinations.assign(n, 1.0 / static_cast<double>(n));
  a.destinations = std::move(destinations);
  return a;
}

inline WorldConfig make_config(FloorPlan plan, std::vector<AgentProfile> agents,
                               int ticks, int days, std::uint64_t seed) {
  WorldConfig c;
  c.floor_plan = std::move(plan);
  c.agents = std::move(agents);
  c.ticks_per_day = ticks;
  c.days = days;
  c.rng_seed = seed;
  return c;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline FloorPlan random_connected_plan(std::mt19937_64& rng, std::size_t n,
                                       double extra_edge_prob) {
  std::vector<std::pair<LocationId, LocationId>> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    edges.emplace_back(static_cast<LocationId>(parent(rng)), static_cast<LocationId>(i));
  }
  std::bernoulli_distribution extra(extra_edge_prob);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (extra(rng)) edges.emplace_back(static_cast<LocationId>(i), static_cast<LocationId>(j));
  return make_plan(n, edges);
}

}  // namespace testing_support
