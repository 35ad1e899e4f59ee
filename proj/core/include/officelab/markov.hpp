#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "officelab/types.hpp"
#include "officelab/world.hpp"

namespace officelab {

/// Dense row-stochastic matrix over location bins.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  TransitionMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  /// Largest |row sum - 1|.
  double max_row_error() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Row-stochastic matrix in compressed row form: rows[i] lists (j, p).
struct SparseKernel {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;

  std::size_t size() const { return rows.size(); }
  static SparseKernel from_dense(const TransitionMatrix& dense);
  /// x ↦ xK
  std::vector<double> left_multiply(std::span<const double> x) const;
};

struct StationaryOptions {
  double tolerance = 1e-10;      // L1 change between iterates
  std::size_t max_iterations = 2'000'000;
};

/// Limiting distribution of the chain started from `start`, by power
/// iteration on the lazy chain (K + I)/2, which shares K's stationary
/// distributions and cannot oscillate. Throws ConvergenceError at the cap.
std::vector<double> stationary_distribution(const SparseKernel& kernel,
                                            std::span<const double> start,
                                            const StationaryOptions& options = {});

std::vector<double> stationary_distribution(const TransitionMatrix& kernel,
                                            std::span<const double> start,
                                            const StationaryOptions& options = {});

/// The simulator's movement dynamics (no schedule, no co-presence) as a
/// Markov chain on (location, target) pairs. State loc*n+target; the idle
/// state at loc is loc*n+loc. A walking agent's pending path is the canonical
/// shortest path from its location to its target, so the pair is a complete
/// state.
struct MovementChain {
  std::size_t locations = 0;
  SparseKernel kernel;

  std::size_t state(LocationId loc, LocationId target) const {
    return static_cast<std::size_t>(loc) * locations +
           static_cast<std::size_t>(target);
  }
  LocationId location_of(std::size_t state) const {
    return static_cast<LocationId>(state / locations);
  }
  /// Sums a state distribution into a location distribution.
  Distribution marginal(std::span<const double> state_probs) const;
};

MovementChain build_movement_chain(const FloorPlan& plan,
                                   const AgentProfile& agent,
                                   double fluctuation_rate);

/// Long-run occupancy of an agent started idle at home, following the
/// simulator's dynamics without schedule and with delta_p = 0.
Distribution stationary_distribution(const FloorPlan& plan,
                                     const AgentProfile& agent,
                                     double fluctuation_rate,
                                     const StationaryOptions& options = {});

/// L1 distance between two equally sized vectors.
double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace officelab
