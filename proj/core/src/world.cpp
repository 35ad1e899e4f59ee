#include "officelab/world.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include <fmt/format.h>

namespace officelab {
namespace {

constexpr std::array<std::pair<Tag, std::string_view>, 6> kTagNames{{
    {Tag::office, "office"},
    {Tag::meeting_room, "meeting_room"},
    {Tag::printer, "printer"},
    {Tag::corridor, "corridor"},
    {Tag::lunch_area, "lunch_area"},
    {Tag::other, "other"},
}};

}  // namespace

std::string_view to_string(Tag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "other";
}

Tag parse_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames)
    if (n == name) return t;
  throw ConfigError(fmt::format("unknown location tag \"{}\"", name));
}

FloorPlan::FloorPlan(std::vector<Location> locations,
                     std::vector<std::pair<LocationId, LocationId>> edges)
    : locations_(std::move(locations)), neighbors_(locations_.size()) {
  const auto n = locations_.size();
  for (auto [a, b] : edges) {
    if (!contains(a) || !contains(b))
      throw ConfigError(fmt::format(
          "adjacency references unknown location {}", contains(a) ? b : a));
    if (a == b)
      throw ConfigError(fmt::format("location {} is adjacent to itself", a));
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& nb : neighbors_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  // All-pairs BFS; n is small (tens of bins).
  dist_.assign(n * n, -1);
  for (std::size_t src = 0; src < n; ++src) {
    int* row = dist_.data() + src * n;
    std::deque<LocationId> queue{static_cast<LocationId>(src)};
    row[src] = 0;
    while (!queue.empty()) {
      LocationId u = queue.front();
      queue.pop_front();
      for (LocationId v : neighbors_[u]) {
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
}

bool FloorPlan::adjacent(LocationId a, LocationId b) const {
  const auto& nb = neighbors_.at(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::pair<LocationId, LocationId>> FloorPlan::edges() const {
  std::vector<std::pair<LocationId, LocationId>> out;
  for (std::size_t a = 0; a < neighbors_.size(); ++a)
    for (LocationId b : neighbors_[a])
      if (static_cast<LocationId>(a) < b)
        out.emplace_back(static_cast<LocationId>(a), b);
  return out;
}

bool FloorPlan::is_connected() const {
  if (locations_.empty()) return true;
  return std::none_of(dist_.begin(), dist_.begin() + size(),
                      [](int d) { return d < 0; });
}

int FloorPlan::distance(LocationId from, LocationId to) const {
  if (!contains(from) || !contains(to))
    throw InvalidArgument(fmt::format("unknown location in ({}, {})", from, to));
  return dist_[static_cast<std::size_t>(from) * size() + to];
}

LocationId FloorPlan::next_hop(LocationId from, LocationId to) const {
  const int d = distance(from, to);
  if (d < 0) return -1;
  if (d == 0) return from;
  // distances are symmetric, so dist(v, to) == dist(to, v)
  for (LocationId v : neighbors_[from])
    if (dist_[static_cast<std::size_t>(to) * size() + v] == d - 1) return v;
  return -1;
}

std::vector<LocationId> shortest_path(const FloorPlan& plan, LocationId from,
                                      LocationId to) {
  if (!plan.contains(from) || !plan.contains(to))
    throw InvalidArgument(
        fmt::format("shortest_path: unknown location in ({}, {})", from, to));
  if (plan.distance(from, to) < 0)
    throw NoPathError(fmt::format("no path from {} to {}", from, to));
  std::vector<LocationId> path{from};
  while (path.back() != to) path.push_back(plan.next_hop(path.back(), to));
  return path;
}

bool ScheduleEvent::active(int day, int tick) const {
  if (tick < start_tick || tick >= end_tick) return false;
  return days.empty() || std::find(days.begin(), days.end(), day) != days.end();
}

const ScheduleEvent* active_event(const AgentProfile& agent, int day,
                                  int tick) {
  const ScheduleEvent* best = nullptr;
  for (const auto& ev : agent.schedule) {
    if (!ev.active(day, tick)) continue;
    if (!best || ev.start_tick < best->start_tick ||
        (ev.start_tick == best->start_tick && ev.target < best->target))
      best = &ev;
  }
  return best;
}

}  // namespace officelab
