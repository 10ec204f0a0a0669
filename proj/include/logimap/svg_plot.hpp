#pragma once

#include "logimap/return_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logimap {

struct PlotLayer {
  std::vector<MapPoint> points;
  std::string color;
  std::string label;
  /// Marker side in pixels.
  double point_size = 1.0;
};

struct PlotSpec {
  /// ≥ 1; the view spans 1/zoom of the unit square on each axis.
  double zoom = 1.0;
  /// Defaults to the centroid of all plotted points.
  std::optional<MapPoint> zoom_center;
  int pixels = 800;
  std::string title;
  std::string x_label = "v_n";
  std::string y_label = "v_{n+1}";
};

/// Return-map scatter. Points sharing a pixel are drawn once per layer, so
/// file size is bounded by the canvas, not by the iteration count. Layers
/// are painted in order (later on top). Throws DomainError for zoom < 1.
std::string render_scatter_svg(const std::vector<PlotLayer>& layers, const PlotSpec& spec);

} // namespace logimap
