#include "officelab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

namespace officelab {

Distribution occupancy(std::span<const LocationId> path,
                       std::size_t location_count, double alpha) {
  if (path.empty()) throw InvalidArgument("occupancy: empty path");
  if (alpha < 0.0) throw InvalidArgument("occupancy: negative smoothing");
  std::vector<double> counts(location_count, 0.0);
  for (LocationId x : path) {
    if (x < 0 || static_cast<std::size_t>(x) >= location_count)
      throw InvalidArgument(fmt::format("occupancy: unknown location {}", x));
    counts[x] += 1.0;
  }
  const double denom = static_cast<double>(path.size()) +
                       alpha * static_cast<double>(location_count);
  for (double& c : counts) c = (c + alpha) / denom;
  return counts;
}

OccupancyDistribution occupancy_distribution(std::span<const LocationId> path,
                                             const FloorPlan& plan,
                                             double alpha) {
  OccupancyDistribution d;
  d.probs = occupancy(path, plan.size(), alpha);
  d.smoothing_alpha = alpha;
  return d;
}

double relative_entropy_bits(std::span<const double> p,
                             std::span<const double> q) {
  if (p.size() != q.size())
    throw InvalidArgument("relative entropy: distributions differ in size");
  double bits = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0)
      throw InvalidArgument(fmt::format(
          "surprise: day puts mass {} on location {} where the baseline is zero",
          p[i], i));
    bits += p[i] * std::log2(p[i] / q[i]);
  }
  // Rounding can push an identical pair a hair below zero.
  return std::max(bits, 0.0);
}

SurpriseScore surprise(const OccupancyDistribution& day_dist,
                       const OccupancyDistribution& baseline) {
  return {day_dist.agent, day_dist.day.value_or(0),
          relative_entropy_bits(day_dist.probs, baseline.probs)};
}

SurpriseScore chain_combine(std::span<const SurpriseScore> scores) {
  if (scores.empty()) throw InvalidArgument("chain_combine: no scores");
  SurpriseScore out{scores[0].agent, scores[0].day, 0.0};
  for (const auto& s : scores) {
    if (s.agent != out.agent || s.day != out.day)
      throw InvalidArgument(fmt::format(
          "chain_combine: mixed sources (agent {} day {} vs agent {} day {})",
          out.agent, out.day, s.agent, s.day));
    out.bits += s.bits;
  }
  return out;
}

std::vector<LocationId> collapse_repeats(std::span<const LocationId> path) {
  std::vector<LocationId> out;
  for (LocationId x : path)
    if (out.empty() || out.back() != x) out.push_back(x);
  return out;
}

PatternReport mine_frequent_patterns(
    AgentId agent, std::span<const std::vector<LocationId>> days,
    int min_support, int min_len, int max_len) {
  if (min_len < 2 || max_len < min_len)
    throw InvalidArgument(fmt::format(
        "pattern mining requires 2 <= min_len <= max_len (got {}, {})", min_len,
        max_len));
  std::map<std::vector<LocationId>, int> support;
  for (const auto& day : days) {
    const auto seq = collapse_repeats(day);
    std::set<std::vector<LocationId>> seen;
    for (std::size_t start = 0; start < seq.size(); ++start)
      for (int len = min_len; len <= max_len; ++len) {
        if (start + static_cast<std::size_t>(len) > seq.size()) break;
        seen.emplace(seq.begin() + static_cast<std::ptrdiff_t>(start),
                     seq.begin() + static_cast<std::ptrdiff_t>(start) + len);
      }
    for (const auto& p : seen) ++support[p];
  }

  PatternReport report;
  report.agent = agent;
  for (auto& [seq, count] : support)
    if (count >= min_support) report.patterns.push_back({seq, count});
  std::sort(report.patterns.begin(), report.patterns.end(),
            [](const Pattern& a, const Pattern& b) {
              if (a.support != b.support) return a.support > b.support;
              if (a.length() != b.length()) return a.length() > b.length();
              return a.sequence < b.sequence;
            });
  return report;
}

AgentAnalytics analyze_agent(AgentId agent,
                             std::span<const std::vector<LocationId>> days,
                             const FloorPlan& plan, double baseline_alpha,
                             double day_alpha) {
  AgentAnalytics out;
  out.agent = agent;
  std::vector<LocationId> pooled;
  for (const auto& d : days) pooled.insert(pooled.end(), d.begin(), d.end());
  out.baseline = occupancy_distribution(pooled, plan, baseline_alpha);
  out.baseline.agent = agent;
  for (std::size_t d = 0; d < days.size(); ++d) {
    auto dist = occupancy_distribution(days[d], plan, day_alpha);
    dist.agent = agent;
    dist.day = static_cast<int>(d);
    out.surprise.push_back(surprise(dist, out.baseline));
    out.daily.push_back(std::move(dist));
  }
  return out;
}

}  // namespace officelab
