#include "logimap/trajectory_stats.hpp"

#include "logimap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace logimap {

ReturnMap return_map(std::span<const double> series, SeriesWindow window) {
  if (window.end > series.size() || window.begin > window.end) {
    throw InsufficientDataError(fmt::format("window [{}, {}) exceeds the {} recorded values",
                                            window.begin, window.end, series.size()));
  }
  if (window.size() < 2) {
    throw InsufficientDataError("a return map needs at least 2 values");
  }
  ReturnMap map;
  map.points.reserve(window.size() - 1);
  for (std::size_t n = window.begin; n + 1 < window.end; ++n) {
    map.points.push_back({series[n], series[n + 1]});
  }
  return map;
}

ReturnMap return_map(std::span<const double> series) {
  return return_map(series, {0, series.size()});
}

namespace {

std::uint64_t pack(std::int64_t i, std::int64_t j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

} // namespace

double bisector_symmetry(const ReturnMap& map, double eps) {
  if (map.points.empty()) return 0.0;
  if (!(eps >= 0.0)) throw DomainError("symmetry tolerance must be non-negative");

  std::vector<MapPoint> unique = map.points;
  std::sort(unique.begin(), unique.end(), [](const MapPoint& p, const MapPoint& q) {
    return p.a < q.a || (p.a == q.a && p.b < q.b);
  });
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  // Cells no smaller than eps, so a 3×3 neighbourhood covers the tolerance.
  const double cell = std::max(eps, 1e-9);
  auto index = [cell](double v) { return static_cast<std::int64_t>(std::floor(v / cell)); };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  grid.reserve(unique.size());
  for (std::uint32_t k = 0; k < unique.size(); ++k) {
    grid[pack(index(unique[k].a), index(unique[k].b))].push_back(k);
  }

  auto has_mirror = [&](const MapPoint& p) {
    const double qa = p.b;
    const double qb = p.a;
    const auto ia = index(qa);
    const auto ib = index(qb);
    for (std::int64_t di = -1; di <= 1; ++di) {
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        const auto it = grid.find(pack(ia + di, ib + dj));
        if (it == grid.end()) continue;
        for (auto k : it->second) {
          if (std::abs(unique[k].a - qa) <= eps && std::abs(unique[k].b - qb) <= eps) {
            return true;
          }
        }
      }
    }
    return false;
  };

  std::size_t mirrored = 0;
  for (const auto& p : map.points) {
    if (has_mirror(p)) ++mirrored;
  }
  return static_cast<double>(mirrored) / static_cast<double>(map.points.size());
}

double ahead_fraction(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError(fmt::format("series lengths differ: {} vs {}", x.size(), y.size()));
  }
  if (x.empty()) throw InsufficientDataError("ahead fraction of empty series");
  std::size_t ahead = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n] > y[n]) ++ahead;
  }
  return static_cast<double>(ahead) / static_cast<double>(x.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError(fmt::format("series lengths differ: {} vs {}", x.size(), y.size()));
  }
  if (x.size() < 2) throw InsufficientDataError("pearson needs at least 2 samples");
  // Rounding in the mean can leave a constant series with a tiny variance.
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw DegenerateVarianceError("pearson is undefined for a constant series");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateVarianceError("pearson is undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

LagResult synchrony_lag(std::span<const double> x, std::span<const double> y,
                        std::size_t max_lag) {
  if (x.size() != y.size()) {
    throw DomainError(fmt::format("series lengths differ: {} vs {}", x.size(), y.size()));
  }
  if (x.size() < std::max<std::size_t>(4 * max_lag, 2)) {
    throw InsufficientDataError(fmt::format(
        "lag search up to {} needs at least {} samples, got {}", max_lag, 4 * max_lag,
        x.size()));
  }
  const auto n = x.size();
  // Lag 0 first; it throws for constant input, which is the degenerate case.
  LagResult best{0, pearson(x, y)};
  constexpr double kTieTolerance = 1e-12;
  for (std::size_t l = 1; l <= max_lag; ++l) {
    for (int sign : {1, -1}) {
      const auto xs = sign > 0 ? x.subspan(0, n - l) : x.subspan(l);
      const auto ys = sign > 0 ? y.subspan(l) : y.subspan(0, n - l);
      double c = 0.0;
      try {
        c = pearson(xs, ys);
      } catch (const DegenerateVarianceError&) {
        continue;
      }
      if (std::abs(c) > std::abs(best.correlation) + kTieTolerance) {
        best = {sign * static_cast<std::int64_t>(l), c};
      }
    }
  }
  return best;
}

std::size_t branch_count(const ReturnMap& map, double cell) {
  if (map.points.empty()) return 0;
  if (!(cell > 0.0)) throw DomainError("branch cell size must be positive");
  const auto side = static_cast<std::int64_t>(std::ceil(1.0 / cell));
  auto index = [&](double v) {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v / cell)), 0,
                                    side - 1);
  };

  std::vector<std::uint64_t> cells;
  cells.reserve(map.points.size());
  for (const auto& p : map.points) cells.push_back(pack(index(p.a), index(p.b)));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t k) {
    while (parent[k] != k) {
      parent[k] = parent[parent[k]];
      k = parent[k];
    }
    return k;
  };

  std::size_t components = cells.size();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto i = static_cast<std::int64_t>(cells[k] >> 32);
    const auto j = static_cast<std::int64_t>(cells[k] & 0xFFFFFFFFu);
    // Forward half of the 8-neighbourhood; the other half is visited from
    // the neighbour's side.
    const std::pair<std::int64_t, std::int64_t> forward[] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
    for (auto [di, dj] : forward) {
      const auto ni = i + di;
      const auto nj = j + dj;
      if (ni < 0 || nj < 0 || ni >= side || nj >= side) continue;
      const auto key = pack(ni, nj);
      const auto it = std::lower_bound(cells.begin(), cells.end(), key);
      if (it == cells.end() || *it != key) continue;
      const auto a = find(k);
      const auto b = find(static_cast<std::size_t>(it - cells.begin()));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

PairStats pair_stats(std::span<const double> x, std::span<const double> y,
                     std::size_t max_lag) {
  PairStats stats;
  stats.ahead_fraction = ahead_fraction(x, y);
  try {
    stats.pearson = pearson(x, y);
    const auto lag = synchrony_lag(x, y, max_lag);
    stats.best_lag = lag.lag;
    stats.lag_correlation = lag.correlation;
  } catch (const DegenerateVarianceError&) {
    stats.pearson = std::numeric_limits<double>::quiet_NaN();
    stats.lag_correlation = std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

} // namespace logimap
