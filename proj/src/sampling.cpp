#include "logimap/sampling.hpp"

#include "logimap/errors.hpp"

namespace logimap {

BinaryConfig BinarySampler::draw(CounterRng& rng) const {
  if (!(s_lo >= 0.0 && s_lo < s_hi && s_hi <= 1.0)) {
    throw ConfigError("sensitivity range must satisfy 0 <= lo < hi <= 1");
  }
  const double sx = s_lo + (s_hi - s_lo) * rng.uniform_open_closed();
  const double sy = s_lo + (s_hi - s_lo) * rng.uniform_open_closed();
  const double x0 = rng.uniform();
  const double y0 = rng.uniform();
  return {kind_x, kind_y, Sensitivity(sx), Sensitivity(sy), x0, y0};
}

BinaryConfig rotating_binary_config(std::uint64_t seed, std::uint64_t index) {
  constexpr auto N = InteractionKind::Negative;
  constexpr auto P = InteractionKind::Positive;
  BinarySampler sampler;
  switch (index % 3) {
  case 0: sampler.kind_x = N; sampler.kind_y = N; break;
  case 1: sampler.kind_x = P; sampler.kind_y = N; break;
  default: sampler.kind_x = P; sampler.kind_y = P; break;
  }
  CounterRng rng(seed, index);
  return sampler.draw(rng);
}

} // namespace logimap
