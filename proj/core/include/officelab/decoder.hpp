#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "officelab/config.hpp"
#include "officelab/fusion.hpp"
#include "officelab/markov.hpp"

namespace officelab {

struct DecodedPath {
  AgentId agent = 0;
  int day = 0;
  std::vector<LocationId> path;
  /// log of initial·Π kernel·Π evidence along `path` (natural log).
  double log_score = 0.0;
};

/// Jointly most likely location sequence, computed in log space.
///
/// Among equally scored paths the lexicographically smallest wins. Scores
/// within 1e-12 (relative) of each other count as equal. Throws
/// NoFeasiblePathError when every path has probability zero.
DecodedPath viterbi_decode(std::span<const double> initial,
                           const TransitionMatrix& kernel,
                           std::span<const Distribution> evidence);

/// Enumerates every path; same contract as viterbi_decode. Throws
/// InvalidArgument when locations^ticks exceeds `max_paths`.
DecodedPath brute_force_decode(std::span<const double> initial,
                               const TransitionMatrix& kernel,
                               std::span<const Distribution> evidence,
                               std::size_t max_paths = 1'000'000);

/// Log score of a specific path (−inf if infeasible).
double path_log_score(std::span<const double> initial,
                      const TransitionMatrix& kernel,
                      std::span<const Distribution> evidence,
                      std::span<const LocationId> path);

/// Decodes every (agent, day) of an event log, starting each day from a
/// point mass at the agent's home. Ordered by agent position then day.
std::vector<DecodedPath> decode_run(std::span<const ObservationEvent> events,
                                    const WorldConfig& config,
                                    const MotionModel& motion);

}  // namespace officelab
