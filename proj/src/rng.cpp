#include "logimap/rng.hpp"

namespace logimap {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) + kGolden * (index + 1));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(derive_seed(seed, stream)) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + kGolden * ++counter_);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  // Rejection on the top multiple of bound keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r = next_u64();
  while (r >= limit) r = next_u64();
  return r % bound;
}

} // namespace logimap
