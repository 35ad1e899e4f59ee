#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "officelab/types.hpp"
#include "officelab/world.hpp"

namespace officelab {

/// Share of time spent in each location over one day or the pooled baseline.
struct OccupancyDistribution {
  AgentId agent = 0;
  /// nullopt for the baseline, otherwise the day index.
  std::optional<int> day;
  Distribution probs;
  double smoothing_alpha = 0.0;

  bool is_baseline() const { return !day.has_value(); }
};

struct SurpriseScore {
  AgentId agent = 0;
  int day = 0;
  double bits = 0.0;
};

struct Pattern {
  std::vector<LocationId> sequence;
  int support = 0;
  std::size_t length() const { return sequence.size(); }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct PatternReport {
  AgentId agent = 0;
  std::vector<Pattern> patterns;
};

/// probs[x] = (count(x) + alpha) / (len + alpha·|locations|).
/// Throws InvalidArgument on an empty path or an unknown location.
Distribution occupancy(std::span<const LocationId> path,
                       std::size_t location_count, double alpha);

OccupancyDistribution occupancy_distribution(std::span<const LocationId> path,
                                             const FloorPlan& plan,
                                             double alpha);

/// Σ p·log2(p/q), with 0·log(0/q) = 0. Throws InvalidArgument when p puts
/// mass where q is zero.
double relative_entropy_bits(std::span<const double> p,
                             std::span<const double> q);

/// Surprise of a day's occupancy against the baseline, in bits.
SurpriseScore surprise(const OccupancyDistribution& day_dist,
                       const OccupancyDistribution& baseline);

/// Sums surprise over independent sources for the same agent and day.
/// Throws InvalidArgument on an empty list or mixed agent/day.
SurpriseScore chain_combine(std::span<const SurpriseScore> scores);

/// Contiguous location patterns recurring on at least `min_support` days.
///
/// Consecutive duplicates are collapsed first, so dwelling does not create
/// patterns. Support counts days, not occurrences. Sorted by support desc,
/// length desc, then sequence ascending. Requires 2 <= min_len <= max_len.
PatternReport mine_frequent_patterns(
    AgentId agent, std::span<const std::vector<LocationId>> days,
    int min_support, int min_len, int max_len);

/// Removes consecutive repeats: [a,a,b,a] -> [a,b,a].
std::vector<LocationId> collapse_repeats(std::span<const LocationId> path);

/// Baseline plus per-day occupancy and surprise for one agent.
struct AgentAnalytics {
  AgentId agent = 0;
  OccupancyDistribution baseline;
  std::vector<OccupancyDistribution> daily;
  std::vector<SurpriseScore> surprise;
};

/// The baseline pools every day with `baseline_alpha`; days use `day_alpha`.
AgentAnalytics analyze_agent(AgentId agent,
                             std::span<const std::vector<LocationId>> days,
                             const FloorPlan& plan, double baseline_alpha = 1.0,
                             double day_alpha = 0.0);

}  // namespace officelab
