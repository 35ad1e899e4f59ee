#include "officelab/decoder.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace officelab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

double tie_tolerance(double score) {
  return 1e-12 * std::max(1.0, std::abs(score));
}

void check_inputs(std::span<const double> initial, const TransitionMatrix& kernel,
                  std::span<const Distribution> evidence) {
  if (evidence.empty()) throw InvalidArgument("decode: no evidence ticks");
  if (initial.size() != kernel.size())
    throw InvalidArgument("decode: initial distribution and kernel sizes differ");
  for (const auto& e : evidence)
    if (e.size() != kernel.size())
      throw InvalidArgument("decode: evidence vector has the wrong size");
}

}  // namespace

double path_log_score(std::span<const double> initial,
                      const TransitionMatrix& kernel,
                      std::span<const Distribution> evidence,
                      std::span<const LocationId> path) {
  double score = safe_log(initial[path[0]]) + safe_log(evidence[0][path[0]]);
  for (std::size_t t = 1; t < path.size(); ++t)
    score += safe_log(kernel(path[t - 1], path[t])) + safe_log(evidence[t][path[t]]);
  return score;
}

DecodedPath viterbi_decode(std::span<const double> initial,
                           const TransitionMatrix& kernel,
                           std::span<const Distribution> evidence) {
  check_inputs(initial, kernel, evidence);
  const std::size_t n = kernel.size();
  const std::size_t ticks = evidence.size();

  std::vector<double> log_kernel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) log_kernel[i * n + j] = safe_log(kernel(i, j));

  // Backward pass: best[t*n+i] is the best log score of ticks t.. given state i
  // at t (evidence at t included). Reconstructing forward from these values
  // lets every step take the lowest id among ties, which yields the
  // lexicographically smallest optimal path.
  std::vector<double> best(ticks * n);
  for (std::size_t i = 0; i < n; ++i)
    best[(ticks - 1) * n + i] = safe_log(evidence[ticks - 1][i]);
  for (std::size_t t = ticks - 1; t-- > 0;) {
    const double* next = best.data() + (t + 1) * n;
    for (std::size_t i = 0; i < n; ++i) {
      double m = kNegInf;
      const double* lk = log_kernel.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) m = std::max(m, lk[j] + next[j]);
      best[t * n + i] = safe_log(evidence[t][i]) + m;
    }
  }

  auto pick = [n](const auto& value_of) {
    double m = kNegInf;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, value_of(j));
    if (m == kNegInf) return std::size_t{n};
    for (std::size_t j = 0; j < n; ++j)
      if (value_of(j) >= m - tie_tolerance(m)) return j;
    return std::size_t{n};
  };

  DecodedPath out;
  out.path.resize(ticks);
  std::size_t state = pick([&](std::size_t i) { return safe_log(initial[i]) + best[i]; });
  if (state == n) throw NoFeasiblePathError("no location path has positive probability");
  out.path[0] = static_cast<LocationId>(state);
  for (std::size_t t = 1; t < ticks; ++t) {
    const std::size_t prev = state;
    state = pick([&](std::size_t j) {
      return log_kernel[prev * n + j] + best[t * n + j];
    });
    out.path[t] = static_cast<LocationId>(state);
  }
  out.log_score = path_log_score(initial, kernel, evidence, out.path);
  return out;
}

DecodedPath brute_force_decode(std::span<const double> initial,
                               const TransitionMatrix& kernel,
                               std::span<const Distribution> evidence,
                               std::size_t max_paths) {
  check_inputs(initial, kernel, evidence);
  const std::size_t n = kernel.size();
  const std::size_t ticks = evidence.size();
  double total = 1.0;
  for (std::size_t t = 0; t < ticks; ++t) {
    total *= static_cast<double>(n);
    if (total > static_cast<double>(max_paths))
      throw InvalidArgument(fmt::format(
          "brute force decode: {}^{} paths exceeds the limit of {}", n, ticks,
          max_paths));
  }

  std::vector<LocationId> path(ticks, 0);
  DecodedPath out;
  out.log_score = kNegInf;
  while (true) {
    const double score = path_log_score(initial, kernel, evidence, path);
    if (score > kNegInf &&
        (out.log_score == kNegInf || score > out.log_score + tie_tolerance(out.log_score))) {
      out.log_score = score;
      out.path = path;
    }
    // odometer increment, last tick fastest, so paths come in lexicographic order
    std::size_t t = ticks;
    while (t > 0 && path[t - 1] == static_cast<LocationId>(n - 1)) path[--t] = 0;
    if (t == 0) break;
    ++path[t - 1];
  }
  if (out.path.empty())
    throw NoFeasiblePathError("no location path has positive probability");
  return out;
}

std::vector<DecodedPath> decode_run(std::span<const ObservationEvent> events,
                                    const WorldConfig& config,
                                    const MotionModel& motion) {
  const std::size_t count = config.agents.size();
  if (motion.kernels.size() != count)
    throw InvalidArgument("motion model must have one kernel per agent");
  const EventIndex index(events, config.days, config.ticks_per_day);
  const EvidenceModel model(config.floor_plan, config.sensors, count);

  std::vector<DecodedPath> out;
  std::vector<Distribution> evidence(config.ticks_per_day);
  for (std::size_t a = 0; a < count; ++a) {
    const auto& agent = config.agents[a];
    Distribution initial(config.floor_plan.size(), 0.0);
    initial[agent.home] = 1.0;
    for (int day = 0; day < config.days; ++day) {
      for (int tick = 0; tick < config.ticks_per_day; ++tick)
        evidence[tick] = model.likelihood(index.at(day, tick), agent.id);
      try {
        auto decoded = viterbi_decode(initial, motion.kernels[a], evidence);
        decoded.agent = agent.id;
        decoded.day = day;
        out.push_back(std::move(decoded));
      } catch (const NoFeasiblePathError&) {
        throw NoFeasiblePathError(fmt::format(
            "agent {} day {}: evidence contradicts the motion model", agent.id, day));
      }
    }
  }
  return out;
}

}  // namespace officelab
