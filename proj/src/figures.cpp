#include "logimap/figures.hpp"

#include "logimap/errors.hpp"

#include <array>
#include <fmt/core.h>

namespace logimap {

namespace {

// Source values use decimal commas; these are the translated decimals.
// Figures 3 and 10 come without an interaction type. Both are taken as PN:
// radial approach is a PN trait, and figure 3 closes into one orbit only
// under PN (NN gives a cloud of dimension near 1.8).
const std::array<FigureSpec, 11>& catalog() {
  static const std::array<FigureSpec, 11> figures = {{
      {1, BinaryConfig::pn(0.999999, 0.99, 0.9, 0.9), 28419, "PN spiral trajectory"},
      {2, BinaryConfig::nn(0.9998, 0.999, 0.001, 0.9), 1, "NN chaos settling on a 2-cycle"},
      {3, BinaryConfig::pn(0.988, 0.3, 0.9, 0.9), 4, "PN closed orbit"},
      {4, BinaryConfig::nn(0.335, 0.333, 0.3, 0.2), 3, "NN irregular orbit"},
      {5, BinaryConfig::pn(0.9999, 0.23308, 0.2, 0.4), 13, "PN irregular orbits"},
      {6, BinaryConfig::pn(0.999, 0.232, 0.9, 0.9), 3, "PN folded orbit"},
      {7, BinaryConfig::pn(0.999, 0.232, 0.9, 0.9), 97, "PN folded orbit, close-up"},
      {8, BinaryConfig::nn(0.99988, 0.9976, 0.765, 0.234), 2, "NN mirror-symmetric approach to a 16-cycle"},
      {9, BinaryConfig::nn(0.8, 0.1, 0.22, 0.12), 1, "NN fractal orbit"},
      {10, BinaryConfig::pn(0.999, 0.393999, 0.45, 0.67), 7, "PN radial approach to an orbit"},
      {11, BinaryConfig::pn(0.999, 0.399, 0.8, 0.8), 115, "PN radial approach to a fixed point"},
  }};
  return figures;
}

std::vector<MapPoint> cycle_points(const Classification& c) {
  std::vector<MapPoint> out;
  const auto& cycle = c.period.cycle_values;
  if (c.attractor.kind() != AttractorClass::Kind::Periodic || cycle.empty()) return out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    out.push_back({cycle[i], cycle[(i + 1) % cycle.size()]});
  }
  return out;
}

} // namespace

std::span<const FigureSpec> figure_catalog() { return catalog(); }

const FigureSpec& figure_spec(int id) {
  if (id < 1 || id > static_cast<int>(catalog().size())) {
    throw ConfigError(fmt::format("unknown figure id {} (expected 1..{})", id, catalog().size()));
  }
  return catalog()[static_cast<std::size_t>(id - 1)];
}

FigureResult render_figure(const FigureSpec& figure, const FigureOptions& options,
                           const DetectorConfig& detector) {
  const std::uint64_t steps = std::max(options.steps, detector.run_length());
  const auto traj = iterate(figure.config, steps);

  FigureResult result{{}, classify_series(traj.channel(0), detector),
                      classify_series(traj.channel(1), detector)};

  std::vector<PlotLayer> layers;
  layers.push_back({return_map(traj.channel(0)).points, "red", "x", 1.0});
  layers.push_back({return_map(traj.channel(1)).points, "blue", "y", 1.0});
  auto attractor = cycle_points(result.x);
  const auto ya = cycle_points(result.y);
  attractor.insert(attractor.end(), ya.begin(), ya.end());
  if (!attractor.empty()) layers.push_back({std::move(attractor), "black", "attractor", 4.0});

  PlotSpec spec;
  spec.zoom = options.zoom.value_or(figure.zoom);
  spec.zoom_center = options.zoom_center;
  spec.pixels = options.pixels;
  const auto& c = figure.config;
  spec.title = fmt::format("Fig. {}: {} ({} S_x={} S_y={} x0={} y0={}, zoom {})", figure.id,
                           figure.title, c.label(), c.s_x.value(), c.s_y.value(), c.x0, c.y0,
                           spec.zoom);
  result.svg = render_scatter_svg(layers, spec);
  return result;
}

} // namespace logimap
