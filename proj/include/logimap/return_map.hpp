#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logimap {

struct MapPoint {
  double a; // v_n
  double b; // v_{n+1}

  friend bool operator==(const MapPoint&, const MapPoint&) = default;
};

/// Consecutive-pair embedding (v_n, v_{n+1}) of one system's series.
struct ReturnMap {
  std::vector<MapPoint> points;
};

/// Half-open index range [begin, end) into a recorded series.
struct SeriesWindow {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
};

/// Return map of series[window]; holds window.size() − 1 points. Throws
/// InsufficientDataError when the window has fewer than 2 values or runs
/// past the series.
ReturnMap return_map(std::span<const double> series, SeriesWindow window);
/// Return map of the whole series.
ReturnMap return_map(std::span<const double> series);

} // namespace logimap
