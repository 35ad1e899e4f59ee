#include "officelab/markov.hpp"

#include <cmath>

#include <fmt/format.h>

namespace officelab {

TransitionMatrix::TransitionMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : TransitionMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != n_) throw InvalidArgument("TransitionMatrix must be square");
    std::size_t j = 0;
    for (double v : r) (*this)(i, j++) = v;
    ++i;
  }
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  TransitionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double TransitionMatrix::max_row_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (double v : row(i)) sum += v;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

SparseKernel SparseKernel::from_dense(const TransitionMatrix& dense) {
  SparseKernel k;
  k.rows.resize(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i)
    for (std::size_t j = 0; j < dense.size(); ++j)
      if (dense(i, j) != 0.0) k.rows[i].emplace_back(j, dense(i, j));
  return k;
}

std::vector<double> SparseKernel::left_multiply(std::span<const double> x) const {
  std::vector<double> out(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (auto [j, p] : rows[i]) out[j] += x[i] * p;
  }
  return out;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

std::vector<double> stationary_distribution(const SparseKernel& kernel,
                                            std::span<const double> start,
                                            const StationaryOptions& options) {
  if (start.size() != kernel.size())
    throw InvalidArgument("start distribution does not match kernel size");
  std::vector<double> pi(start.begin(), start.end());
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    auto moved = kernel.left_multiply(pi);
    double sum = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
      moved[i] = 0.5 * (moved[i] + pi[i]);
      sum += moved[i];
    }
    for (double& v : moved) v /= sum;
    const double change = l1_distance(moved, pi);
    pi = std::move(moved);
    if (change < options.tolerance) return pi;
  }
  throw ConvergenceError(fmt::format(
      "stationary distribution did not converge in {} iterations",
      options.max_iterations));
}

std::vector<double> stationary_distribution(const TransitionMatrix& kernel,
                                            std::span<const double> start,
                                            const StationaryOptions& options) {
  return stationary_distribution(SparseKernel::from_dense(kernel), start,
                                 options);
}

Distribution MovementChain::marginal(std::span<const double> state_probs) const {
  Distribution out(locations, 0.0);
  for (std::size_t s = 0; s < state_probs.size(); ++s)
    out[location_of(s)] += state_probs[s];
  return out;
}

MovementChain build_movement_chain(const FloorPlan& plan,
                                   const AgentProfile& agent,
                                   double fluctuation_rate) {
  const std::size_t n = plan.size();
  MovementChain chain;
  chain.locations = n;
  chain.kernel.rows.resize(n * n);

  // Arriving at the target makes the agent idle there.
  auto after_step = [&](LocationId loc, LocationId target) {
    return loc == target ? chain.state(loc, loc) : chain.state(loc, target);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto loc = static_cast<LocationId>(i);
    for (std::size_t t = 0; t < n; ++t) {
      const auto target = static_cast<LocationId>(t);
      auto& row = chain.kernel.rows[chain.state(loc, target)];
      if (loc == target) {
        const double stay = agent.stay_prob[i];
        double self = stay;
        for (std::size_t d = 0; d < n; ++d) {
          const double p = (1.0 - stay) * agent.destinations[d];
          if (p == 0.0) continue;
          if (d == i)
            self += p;
          else
            row.emplace_back(chain.state(loc, static_cast<LocationId>(d)), p);
        }
        if (self > 0.0) row.emplace_back(chain.state(loc, loc), self);
        continue;
      }
      if (plan.distance(loc, target) < 0) {
        row.emplace_back(chain.state(loc, target), 1.0);
        continue;
      }
      const LocationId next = plan.next_hop(loc, target);
      if (1.0 - fluctuation_rate > 0.0)
        row.emplace_back(after_step(next, target), 1.0 - fluctuation_rate);
      const auto nbrs = plan.neighbors(loc);
      if (fluctuation_rate > 0.0 && !nbrs.empty()) {
        const double each = fluctuation_rate / static_cast<double>(nbrs.size());
        for (LocationId m : nbrs) row.emplace_back(after_step(m, target), each);
      }
    }
  }
  return chain;
}

Distribution stationary_distribution(const FloorPlan& plan,
                                     const AgentProfile& agent,
                                     double fluctuation_rate,
                                     const StationaryOptions& options) {
  const auto chain = build_movement_chain(plan, agent, fluctuation_rate);
  std::vector<double> start(chain.kernel.size(), 0.0);
  start[chain.state(agent.home, agent.home)] = 1.0;
  return chain.marginal(stationary_distribution(chain.kernel, start, options));
}

}  // namespace officelab
