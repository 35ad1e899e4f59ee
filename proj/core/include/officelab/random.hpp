#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace officelab {

/// Derives an independent 64-bit seed for a named sub-stream of a master seed.
/// The same (master, stream, index) triple always yields the same seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index = 0);

/// Deterministic random stream.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// performs its own conversions to doubles and indices, so the produced values
/// do not depend on the standard library's distribution implementations.
class RandomStream {
 public:
  RandomStream() : RandomStream(0) {}
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Samples an index proportional to nonnegative weights. Falls back to the
  /// last positive weight when rounding leaves the draw past the total.
  std::size_t categorical(std::span<const double> weights);

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace officelab
