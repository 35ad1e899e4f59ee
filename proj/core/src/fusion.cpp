#include "officelab/fusion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace officelab {

void MotionModel::validate(const FloorPlan& plan) const {
  for (std::size_t a = 0; a < kernels.size(); ++a) {
    const auto& k = kernels[a];
    if (k.size() != plan.size())
      throw InvalidArgument(fmt::format("motion kernel {} has wrong size", a));
    if (k.max_row_error() > 1e-9)
      throw InvalidArgument(fmt::format("motion kernel {} rows do not sum to 1", a));
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) {
        const double p = k(i, j);
        if (p < 0.0)
          throw InvalidArgument(fmt::format("motion kernel {} has a negative entry", a));
        if (p > 0.0 && i != j &&
            !plan.adjacent(static_cast<LocationId>(i), static_cast<LocationId>(j)))
          throw InvalidArgument(fmt::format(
              "motion kernel {} moves {} -> {} between non-adjacent locations", a,
              i, j));
      }
  }
}

TransitionMatrix adjacent_kernel(const FloorPlan& plan) {
  TransitionMatrix k(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto nbrs = plan.neighbors(static_cast<LocationId>(i));
    const double p = 1.0 / static_cast<double>(nbrs.size() + 1);
    k(i, i) = p;
    for (LocationId j : nbrs) k(i, static_cast<std::size_t>(j)) = p;
  }
  return k;
}

TransitionMatrix simulator_kernel(const FloorPlan& plan,
                                  const AgentProfile& agent,
                                  double fluctuation_rate,
                                  double adjacency_blend) {
  const auto chain = build_movement_chain(plan, agent, fluctuation_rate);
  std::vector<double> start(chain.kernel.size(), 0.0);
  start[chain.state(agent.home, agent.home)] = 1.0;
  const auto pi = stationary_distribution(chain.kernel, start);

  const std::size_t n = plan.size();
  TransitionMatrix flow(n);
  std::vector<double> mass(n, 0.0);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    if (pi[s] == 0.0) continue;
    const auto from = static_cast<std::size_t>(chain.location_of(s));
    mass[from] += pi[s];
    for (auto [t, p] : chain.kernel.rows[s])
      flow(from, static_cast<std::size_t>(chain.location_of(t))) += pi[s] * p;
  }

  const auto adjacent = adjacent_kernel(plan);
  TransitionMatrix k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool visited = mass[i] > 1e-300;
    for (std::size_t j = 0; j < n; ++j) {
      const double lumped = visited ? flow(i, j) / mass[i] : adjacent(i, j);
      k(i, j) = (1.0 - adjacency_blend) * lumped + adjacency_blend * adjacent(i, j);
    }
  }
  return k;
}

MotionModel build_motion_model(const WorldConfig& config) {
  MotionModel model;
  for (const auto& agent : config.agents) {
    if (config.fusion.motion == MotionPrior::adjacent)
      model.kernels.push_back(adjacent_kernel(config.floor_plan));
    else
      model.kernels.push_back(simulator_kernel(config.floor_plan, agent,
                                               config.fluctuation_rate,
                                               config.fusion.adjacency_blend));
  }
  return model;
}

Distribution predict(std::span<const double> belief,
                     const TransitionMatrix& kernel) {
  if (belief.size() != kernel.size())
    throw InvalidArgument("predict: belief and kernel sizes differ");
  Distribution out(belief.size(), 0.0);
  for (std::size_t i = 0; i < belief.size(); ++i) {
    if (belief[i] == 0.0) continue;
    const auto row = kernel.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += belief[i] * row[j];
  }
  return out;
}

Distribution update(std::span<const double> prior,
                    std::span<const double> likelihood) {
  if (prior.size() != likelihood.size())
    throw InvalidArgument("update: prior and likelihood sizes differ");
  Distribution post(prior.size());
  double total = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    post[i] = prior[i] * likelihood[i];
    total += post[i];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw DegenerateEvidenceError("evidence contradicts the prior everywhere");
  for (double& p : post) p /= total;
  return post;
}

void apply_floor(Distribution& belief, double floor) {
  double total = 0.0;
  for (double& p : belief) {
    p = std::max(p, floor);
    total += p;
  }
  for (double& p : belief) p /= total;
}

EvidenceModel::EvidenceModel(const FloorPlan& plan,
                             std::span<const SensorSpec> sensors,
                             std::size_t population)
    : locations_(plan.size()) {
  const double n_agents = static_cast<double>(std::max<std::size_t>(population, 1));
  for (const auto& s : sensors) {
    SensorTerms t;
    t.id = s.id;
    t.covers.assign(locations_, 0);
    for (LocationId x : s.coverage)
      if (plan.contains(x)) t.covers[x] = 1;
    const bool can_confuse = population > 1;
    const double p_confuse = can_confuse ? s.p_confuse : 0.0;
    t.hit = s.p_detect * (1.0 - p_confuse);
    t.spurious = s.p_false_positive / n_agents;
    if (can_confuse) t.spurious += s.p_detect * s.p_confuse / (n_agents - 1.0);
    t.spurious = std::min(t.spurious, 1.0);
    t.spurious_per_loc = t.spurious / static_cast<double>(s.coverage.size());
    sensors_.push_back(std::move(t));
  }
  std::sort(sensors_.begin(), sensors_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
}

Distribution EvidenceModel::likelihood(
    std::span<const ObservationEvent> tick_events, AgentId agent) const {
  // (sensor position, location) for every report naming this agent
  std::vector<std::pair<std::size_t, LocationId>> reports;
  for (const auto& e : tick_events) {
    if (e.reported_agent != agent) continue;
    auto it = std::lower_bound(
        sensors_.begin(), sensors_.end(), e.sensor,
        [](const SensorTerms& t, SensorId id) { return t.id < id; });
    if (it == sensors_.end() || it->id != e.sensor)
      throw InvalidArgument(fmt::format("event from unknown sensor {}", e.sensor));
    reports.emplace_back(static_cast<std::size_t>(it - sensors_.begin()),
                         e.location);
  }
  std::sort(reports.begin(), reports.end());

  auto spurious = [](const SensorTerms& t, std::size_t k) {
    return k == 0 ? 1.0 - t.spurious
                  : std::pow(t.spurious_per_loc, static_cast<double>(k));
  };

  Distribution w(locations_, 1.0);
  auto r = reports.begin();
  for (std::size_t si = 0; si < sensors_.size(); ++si) {
    const auto& t = sensors_[si];
    auto first = r;
    while (r != reports.end() && r->first == si) ++r;
    const auto k = static_cast<std::size_t>(r - first);
    const double s_k = spurious(t, k);
    const double s_prev = k > 0 ? spurious(t, k - 1) : 0.0;
    const double silent_inside = (1.0 - t.hit) * s_k;
    for (std::size_t x = 0; x < locations_; ++x) {
      if (!t.covers[x]) {
        w[x] *= s_k;
        continue;
      }
      bool reported_here = false;
      for (auto it = first; it != r; ++it)
        if (it->second == static_cast<LocationId>(x)) reported_here = true;
      w[x] *= reported_here ? silent_inside + t.hit * s_prev : silent_inside;
    }
  }
  return w;
}

Distribution likelihood_of_events(std::span<const ObservationEvent> tick_events,
                                  AgentId agent,
                                  std::span<const SensorSpec> sensors,
                                  const FloorPlan& plan,
                                  std::size_t population) {
  return EvidenceModel(plan, sensors, population).likelihood(tick_events, agent);
}

EventIndex::EventIndex(std::span<const ObservationEvent> events, int days,
                       int ticks_per_day)
    : events_(events), ticks_per_day_(ticks_per_day) {
  const auto frames = static_cast<std::size_t>(days) *
                      static_cast<std::size_t>(ticks_per_day);
  offsets_.assign(frames + 1, 0);
  std::size_t previous = 0;
  for (const auto& e : events) {
    if (e.day < 0 || e.day >= days || e.tick < 0 || e.tick >= ticks_per_day)
      throw InvalidArgument(fmt::format("event at day {} tick {} is outside the run",
                                        e.day, e.tick));
    const auto frame = static_cast<std::size_t>(e.day) * ticks_per_day + e.tick;
    if (frame < previous)
      throw InvalidArgument("event log is not sorted by (day, tick)");
    previous = frame;
    ++offsets_[frame + 1];
  }
  for (std::size_t f = 1; f < offsets_.size(); ++f) offsets_[f] += offsets_[f - 1];
}

std::span<const ObservationEvent> EventIndex::at(int day, int tick) const {
  const auto frame = static_cast<std::size_t>(day) * ticks_per_day_ + tick;
  return events_.subspan(offsets_[frame], offsets_[frame + 1] - offsets_[frame]);
}

FusionResult fuse_run(std::span<const ObservationEvent> events,
                      const WorldConfig& config, const MotionModel& motion) {
  const std::size_t count = config.agents.size();
  if (motion.kernels.size() != count)
    throw InvalidArgument("motion model must have one kernel per agent");
  const std::size_t n = config.floor_plan.size();
  const EventIndex index(events, config.days, config.ticks_per_day);
  const EvidenceModel evidence(config.floor_plan, config.sensors, count);

  FusionResult result;
  result.beliefs.reserve(static_cast<std::size_t>(config.days) *
                         static_cast<std::size_t>(config.ticks_per_day));
  std::vector<Distribution> belief(count);
  for (int day = 0; day < config.days; ++day) {
    for (std::size_t a = 0; a < count; ++a) {
      belief[a].assign(n, 0.0);
      belief[a][config.agents[a].home] = 1.0;
    }
    for (int tick = 0; tick < config.ticks_per_day; ++tick) {
      const auto tick_events = index.at(day, tick);
      for (std::size_t a = 0; a < count; ++a) {
        if (tick > 0) belief[a] = predict(belief[a], motion.kernels[a]);
        const auto weights = evidence.likelihood(tick_events, config.agents[a].id);
        try {
          belief[a] = update(belief[a], weights);
        } catch (const DegenerateEvidenceError&) {
          ++result.degenerate_updates;
        }
        apply_floor(belief[a]);
      }
      result.beliefs.push_back({day, tick, belief});
    }
  }
  return result;
}

std::vector<std::vector<std::vector<LocationId>>> argmax_paths(
    std::span<const BeliefMatrix> beliefs, std::size_t agents, int days,
    int ticks_per_day) {
  std::vector<std::vector<std::vector<LocationId>>> out(
      agents, std::vector<std::vector<LocationId>>(
                  days, std::vector<LocationId>(ticks_per_day, 0)));
  for (const auto& m : beliefs) {
    for (std::size_t a = 0; a < agents && a < m.probs.size(); ++a) {
      const auto& row = m.probs[a];
      out[a][m.day][m.tick] = static_cast<LocationId>(
          std::max_element(row.begin(), row.end()) - row.begin());
    }
  }
  return out;
}

}  // namespace officelab
