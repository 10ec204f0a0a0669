#pragma once

#include "logimap/dynamics.hpp"
#include "logimap/rng.hpp"

#include <cstdint>

namespace logimap {

/// Random binary interactions: sensitivities uniform on (s_lo, s_hi],
/// seeds uniform on [0, 1).
struct BinarySampler {
  InteractionKind kind_x = InteractionKind::Negative;
  InteractionKind kind_y = InteractionKind::Negative;
  double s_lo = 0.0;
  double s_hi = 1.0;

  BinaryConfig draw(CounterRng& rng) const;
};

/// Config `index` of a seeded family; NN, PN, PP in rotation.
BinaryConfig rotating_binary_config(std::uint64_t seed, std::uint64_t index);

} // namespace logimap
