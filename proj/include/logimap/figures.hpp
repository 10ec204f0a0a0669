#pragma once

#include "logimap/attractor.hpp"
#include "logimap/dynamics.hpp"
#include "logimap/svg_plot.hpp"

#include <optional>
#include <span>
#include <string>

namespace logimap {

/// Parameter set of one reference return-map figure.
struct FigureSpec {
  int id;
  BinaryConfig config;
  /// 1 when no zoom is given.
  double zoom;
  std::string title;
};

std::span<const FigureSpec> figure_catalog();
/// Throws ConfigError for ids outside 1..11.
const FigureSpec& figure_spec(int id);

struct FigureOptions {
  std::uint64_t steps = 200'000;
  std::optional<MapPoint> zoom_center;
  std::optional<double> zoom;
  int pixels = 800;
};

struct FigureResult {
  std::string svg;
  Classification x;
  Classification y;
};

/// Runs the figure's configuration and draws (x_n, x_{n+1}) in red,
/// (y_n, y_{n+1}) in blue and any detected periodic attractor in black.
FigureResult render_figure(const FigureSpec& figure, const FigureOptions& options,
                           const DetectorConfig& detector = {});

} // namespace logimap
