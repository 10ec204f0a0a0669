#pragma once

#include <cstdint>

namespace logimap {

/// Counter-based generator: draw k of stream s under key `seed` is a pure
/// function of (seed, s, k), so streams handed to different workers never
/// depend on scheduling. Output bits and the derived distributions are
/// defined here, not by <random>, so draws match across standard libraries.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Seed of child stream `index` derived from a parent seed.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

} // namespace logimap
