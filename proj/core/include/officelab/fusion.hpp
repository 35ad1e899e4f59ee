#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "officelab/config.hpp"
#include "officelab/markov.hpp"
#include "officelab/sensors.hpp"

namespace officelab {

/// Per-tick person × location probability table. probs[i] is the belief
/// for config.agents[i].
struct BeliefMatrix {
  int day = 0;
  int tick = 0;
  std::vector<Distribution> probs;
};

/// Per-agent location kernels, indexed like config.agents.
struct MotionModel {
  std::vector<TransitionMatrix> kernels;

  /// Throws InvalidArgument if a row does not sum to 1 within 1e-9 or puts
  /// mass on a non-adjacent location.
  void validate(const FloorPlan& plan) const;
};

/// Uniform over staying and each neighbour.
TransitionMatrix adjacent_kernel(const FloorPlan& plan);

/// Location kernel lumped from the agent's movement chain at stationarity:
/// K[i][j] = P(next location j | current location i), averaged over the
/// hidden walking targets, then blended with `adjacent_kernel` by
/// `adjacency_blend`. Rows of never-visited locations fall back to the
/// adjacent kernel.
TransitionMatrix simulator_kernel(const FloorPlan& plan,
                                  const AgentProfile& agent,
                                  double fluctuation_rate,
                                  double adjacency_blend);

/// Builds the motion model selected by config.fusion.
MotionModel build_motion_model(const WorldConfig& config);

/// b'[j] = Σ_i b[i]·K[i][j].
Distribution predict(std::span<const double> belief,
                     const TransitionMatrix& kernel);

/// posterior[i] ∝ prior[i]·likelihood[i]. Throws DegenerateEvidenceError when
/// every product is zero.
Distribution update(std::span<const double> prior,
                    std::span<const double> likelihood);

/// Floors every entry at `floor` and renormalises.
void apply_floor(Distribution& belief, double floor = 1e-12);

/// Sensor observation model used for fusion and decoding.
///
/// For agent a at location x, each sensor contributes the probability of its
/// reports naming a at this tick. With hit = p_detect·(1 − p_confuse) and a
/// spurious rate q = p_fp/N + p_detect·p_confuse/(N − 1) spread uniformly over
/// the |C| covered locations, k reports by one sensor score
///   x inside coverage:  (1 − hit)·s(k) + hit·[x reported]·s(k − 1)
///   x outside coverage: s(k)
/// where s(0) = 1 − q and s(k) = (q/|C|)^k. Confusion terms vanish for N = 1.
class EvidenceModel {
 public:
  EvidenceModel(const FloorPlan& plan, std::span<const SensorSpec> sensors,
                std::size_t population);

  /// Per-location weights for `agent` given every event of one tick.
  Distribution likelihood(std::span<const ObservationEvent> tick_events,
                          AgentId agent) const;

  std::size_t locations() const { return locations_; }

 private:
  struct SensorTerms {
    SensorId id;
    std::vector<char> covers;
    double hit;
    double spurious;          // q
    double spurious_per_loc;  // q / |C|
  };
  std::size_t locations_;
  std::vector<SensorTerms> sensors_;
};

/// One-shot form of EvidenceModel::likelihood.
Distribution likelihood_of_events(std::span<const ObservationEvent> tick_events,
                                  AgentId agent,
                                  std::span<const SensorSpec> sensors,
                                  const FloorPlan& plan,
                                  std::size_t population);

/// Random access to a (day, tick)-sorted event log.
class EventIndex {
 public:
  /// `events` must be sorted by (day, tick) and outlive the index.
  EventIndex(std::span<const ObservationEvent> events, int days,
             int ticks_per_day);
  std::span<const ObservationEvent> at(int day, int tick) const;

 private:
  std::span<const ObservationEvent> events_;
  int ticks_per_day_;
  std::vector<std::size_t> offsets_;
};

struct FusionResult {
  std::vector<BeliefMatrix> beliefs;  // one per (day, tick), in order
  /// Updates that fell back to predict-only on contradictory evidence.
  std::size_t degenerate_updates = 0;
};

/// Filters every agent through every day: point mass at home, then for each
/// tick predict (from tick 1 on) and update with that tick's evidence.
/// Each posterior is floored at 1e-12 and renormalised.
FusionResult fuse_run(std::span<const ObservationEvent> events,
                      const WorldConfig& config, const MotionModel& motion);

/// Per-tick argmax path for each agent and day: result[agent][day][tick].
std::vector<std::vector<std::vector<LocationId>>> argmax_paths(
    std::span<const BeliefMatrix> beliefs, std::size_t agents, int days,
    int ticks_per_day);

}  // namespace officelab
