#include "officelab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace officelab::scenarios {
namespace {

struct RoomSpec {
  std::string name;
  Tag tag;
};

std::vector<double> resolve_stay(const FloorPlan& plan, double fallback,
                                 const std::map<Tag, double>& by_tag) {
  std::vector<double> stay(plan.size(), fallback);
  for (std::size_t x = 0; x < plan.size(); ++x)
    if (auto it = by_tag.find(plan.tag(static_cast<LocationId>(x))); it != by_tag.end())
      stay[x] = it->second;
  return stay;
}

void normalize(std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
}

int scaled(int ticks_per_day, double fraction) {
  return static_cast<int>(std::lround(fraction * ticks_per_day));
}

const std::map<Tag, double> kStayByTag{
    {Tag::office, 0.9},     {Tag::meeting_room, 0.9}, {Tag::printer, 0.6},
    {Tag::corridor, 0.2},   {Tag::lunch_area, 0.93},  {Tag::other, 0.8},
};

// Corridor 0-3; offices 4-7; meeting rooms 8 (A) and 11 (B); printer 9;
// lunch area 10.
FloorPlan small_floor(const std::vector<std::optional<AgentId>>& owners) {
  std::vector<Location> locs;
  for (int c = 0; c < 4; ++c) locs.push_back({fmt::format("corridor-{}", c), Tag::corridor, {}});
  for (int o = 0; o < 4; ++o)
    locs.push_back({fmt::format("office-{}", o), Tag::office,
                    o < static_cast<int>(owners.size()) ? owners[o] : std::nullopt});
  locs.push_back({"meeting-A", Tag::meeting_room, {}});
  locs.push_back({"printer", Tag::printer, {}});
  locs.push_back({"lunch", Tag::lunch_area, {}});
  locs.push_back({"meeting-B", Tag::meeting_room, {}});
  std::vector<std::pair<LocationId, LocationId>> edges{
      {0, 1}, {1, 2}, {2, 3}, {0, 4}, {0, 5}, {0, 10}, {1, 6},
      {1, 8}, {2, 7}, {2, 9}, {3, 11}};
  return FloorPlan(std::move(locs), std::move(edges));
}

}  // namespace

std::vector<SensorSpec> full_coverage_sensors(const FloorPlan& plan,
                                              double p_detect,
                                              double p_false_positive,
                                              double p_confuse) {
  std::vector<SensorSpec> sensors;
  for (std::size_t x = 0; x < plan.size(); ++x)
    sensors.push_back({static_cast<SensorId>(x), SensorKind::tag_reader,
                       {static_cast<LocationId>(x)}, p_detect, p_false_positive,
                       p_confuse});
  return sensors;
}

WorldConfig office50(std::uint64_t seed, int ticks_per_day, int days) {
  constexpr int kCorridor = 10;
  // Non-office rooms by location id; everything else off the corridor is an office.
  const std::map<int, RoomSpec> special{
      {10, {"lunch-north", Tag::lunch_area}}, {17, {"meeting-A", Tag::meeting_room}},
      {21, {"printer-west", Tag::printer}},   {25, {"storage", Tag::other}},
      {26, {"meeting-B", Tag::meeting_room}}, {33, {"meeting-C", Tag::meeting_room}},
      {37, {"printer-east", Tag::printer}},   {41, {"lab", Tag::other}},
      {45, {"meeting-D", Tag::meeting_room}}, {49, {"lunch-south", Tag::lunch_area}},
  };

  std::vector<Location> locs;
  std::vector<std::pair<LocationId, LocationId>> edges;
  for (int c = 0; c < kCorridor; ++c) {
    locs.push_back({fmt::format("corridor-{}", c), Tag::corridor, {}});
    if (c > 0) edges.emplace_back(c - 1, c);
  }
  std::vector<LocationId> offices;
  for (int r = 0; r < 40; ++r) {
    const int id = kCorridor + r;
    if (auto it = special.find(id); it != special.end()) {
      locs.push_back({it->second.name, it->second.tag, {}});
    } else {
      locs.push_back({fmt::format("office-{}", offices.size()), Tag::office, {}});
      offices.push_back(id);
    }
    edges.emplace_back(r / 4, id);
  }

  // Agents 8 and 9 share an office; everyone else owns one.
  const std::vector<std::string> departments{
      "Research",  "Research",    "Research",  "Development", "Development",
      "Development", "Workshops", "Workshops", "Other",       "Other"};
  std::vector<LocationId> homes;
  for (int a = 0; a < 8; ++a) homes.push_back(offices[static_cast<std::size_t>(a) * 3]);
  homes.push_back(offices[25]);
  homes.push_back(offices[25]);
  for (int a = 0; a < 8; ++a) locs[homes[a]].owner = a;

  WorldConfig cfg;
  cfg.floor_plan = FloorPlan(std::move(locs), std::move(edges));
  cfg.ticks_per_day = ticks_per_day;
  cfg.days = days;
  cfg.rng_seed = seed;

  const auto& plan = cfg.floor_plan;
  for (int a = 0; a < 10; ++a) {
    AgentProfile p;
    p.id = a;
    p.home = homes[a];
    p.department = departments[a];
    p.default_stay = 0.5;
    p.stay_prob = resolve_stay(plan, 0.5, kStayByTag);
    p.stay_prob[p.home] = 0.97;
    p.delta_p = 0.02;
    p.destinations.assign(plan.size(), 0.0);
    p.destinations[p.home] += 0.45;
    p.destinations[a < 5 ? 21 : 37] += 0.08;
    p.destinations[a < 5 ? 37 : 21] += 0.04;
    p.destinations[a < 5 ? 10 : 49] += 0.06;
    p.destinations[a < 5 ? 49 : 10] += 0.04;
    for (LocationId m : {17, 26, 33, 45}) p.destinations[m] += 0.04;
    p.destinations[25] += 0.02;
    p.destinations[41] += 0.02;
    p.destinations[homes[(a + 1) % 10]] += 0.065;
    p.destinations[homes[(a + 3) % 10]] += 0.065;
    normalize(p.destinations);

    const LocationId team_room = a < 3 ? 17 : a < 6 ? 33 : a < 8 ? 45 : 26;
    p.schedule.push_back({scaled(ticks_per_day, 0.2), scaled(ticks_per_day, 0.3),
                          team_room, 0.8, "team meeting", {}});
    p.schedule.push_back({scaled(ticks_per_day, 0.5), scaled(ticks_per_day, 0.58),
                          a < 5 ? 10 : 49, 0.7, "lunch", {}});
    cfg.agents.push_back(std::move(p));
  }

  int next_id = 0;
  for (int k = 0; k < 30; ++k) {
    const int corridor = k % kCorridor;
    const int first_room = kCorridor + corridor * 4 + k / kCorridor;
    cfg.sensors.push_back({next_id++, SensorKind::camera,
                           {corridor, first_room, first_room + 1}, 0.9, 0.01, 0.05});
  }
  next_id = 100;
  for (int x = 0; x < 50; ++x)
    cfg.sensors.push_back({next_id++, SensorKind::tag_reader, {x}, 0.9, 0.01, 0.05});
  for (int x = kCorridor; x < 50; ++x)
    cfg.sensors.push_back({next_id++, SensorKind::tag_reader, {x}, 0.9, 0.01, 0.05});
  return cfg;
}

WorldConfig demo(std::uint64_t seed) {
  WorldConfig cfg;
  cfg.floor_plan = small_floor({0, 1, 2, 3});
  cfg.ticks_per_day = 200;
  cfg.days = 3;
  cfg.rng_seed = seed;
  const auto& plan = cfg.floor_plan;
  const std::vector<std::string> departments{"Research", "Research", "Development",
                                             "Workshops"};
  for (int a = 0; a < 4; ++a) {
    AgentProfile p;
    p.id = a;
    p.home = 4 + a;
    p.department = departments[a];
    p.stay_prob = resolve_stay(plan, 0.5, kStayByTag);
    p.stay_prob[p.home] = 0.96;
    p.delta_p = 0.03;
    p.destinations.assign(plan.size(), 0.0);
    p.destinations[p.home] = 0.5;
    p.destinations[9] = 0.15;
    p.destinations[10] = 0.15;
    p.destinations[4 + (a + 1) % 4] = 0.1;
    p.destinations[11] = 0.1;
    if (a < 3) p.schedule.push_back({50, 90, 8, 0.9, "stand-up", {}});
    p.schedule.push_back({110, 140, 10, 0.8, "lunch", {}});
    cfg.agents.push_back(std::move(p));
  }
  int id = 0;
  for (int c = 0; c < 4; ++c) {
    std::vector<LocationId> cover{c};
    for (LocationId r : plan.neighbors(c))
      if (r >= 4) cover.push_back(r);
    std::sort(cover.begin(), cover.end());
    cfg.sensors.push_back({id++, SensorKind::camera, cover, 0.85, 0.01, 0.05});
  }
  for (int x = 4; x < 12; ++x)
    cfg.sensors.push_back({id++, SensorKind::tag_reader, {x}, 0.9, 0.01, 0.05});
  cfg.sensors.push_back({id++, SensorKind::biometric, {0}, 0.95, 0.0, 0.0});
  cfg.contacts.min_consecutive_ticks = 5;
  return cfg;
}

WorldConfig unusual_week(std::uint64_t seed) {
  WorldConfig cfg;
  cfg.floor_plan = small_floor({0});
  cfg.ticks_per_day = 300;
  cfg.days = 5;
  cfg.rng_seed = seed;
  const auto& plan = cfg.floor_plan;
  AgentProfile p;
  p.id = 0;
  p.home = 4;
  p.department = "Research";
  p.stay_prob = resolve_stay(plan, 0.5, kStayByTag);
  p.stay_prob[p.home] = 0.97;
  p.destinations.assign(plan.size(), 0.0);
  p.destinations[4] = 0.5;
  p.destinations[9] = 0.2;
  p.destinations[10] = 0.15;
  p.destinations[5] = 0.15;
  const std::vector<int> routine{0, 1, 2, 3};
  p.schedule.push_back({60, 100, 8, 0.9, "team meeting", routine});
  p.schedule.push_back({150, 180, 10, 0.9, "lunch", routine});
  p.schedule.push_back({30, 270, 11, 1.0, "offsite workshop", {4}});
  cfg.agents.push_back(std::move(p));
  return cfg;
}

}  // namespace officelab::scenarios
