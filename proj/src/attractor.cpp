#include "logimap/attractor.hpp"

#include "logimap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <limits>
#include <numeric>

namespace logimap {

void DetectorConfig::validate() const {
  if (max_period < 1) throw ConfigError("max_period must be at least 1");
  if (window < 2 * max_period) {
    throw ConfigError(fmt::format("window {} is shorter than 2 * max_period = {}", window,
                                  2 * max_period));
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(extinction_threshold > 0.0)) throw ConfigError("extinction threshold must be positive");
  if (occupancy_grids.size() < 3) {
    throw ConfigError("occupancy test needs at least 3 grid resolutions");
  }
  for (int g : occupancy_grids) {
    if (g < 1) throw ConfigError("occupancy grid resolutions must be positive");
  }
  if (!(approach_min_drop > 0.0 && approach_min_drop < 1.0)) {
    throw ConfigError("approach_min_drop must lie in (0, 1)");
  }
  if (!(orbital_max_dimension < chaotic_min_dimension)) {
    throw ConfigError("orbital dimension bound must lie below the chaotic bound");
  }
}

AttractorClass AttractorClass::periodic(std::uint64_t k) {
  AttractorClass c(Kind::Periodic);
  c.k_ = k;
  return c;
}

AttractorClass AttractorClass::unresolved(std::string note) {
  AttractorClass c(Kind::Unresolved);
  c.note_ = std::move(note);
  return c;
}

std::string_view AttractorClass::name() const {
  switch (kind_) {
  case Kind::Periodic: return "periodic";
  case Kind::Chaotic: return "chaotic";
  case Kind::Orbital: return "orbital";
  case Kind::Extinct: return "extinct";
  case Kind::Unresolved: return "unresolved";
  }
  return "unresolved";
}

double period_residual(std::span<const double> series, std::size_t begin, std::size_t end,
                       std::uint64_t k) {
  double worst = 0.0;
  for (std::size_t n = begin; n + k < end; ++n) {
    worst = std::max(worst, std::abs(series[n] - series[n + k]));
  }
  return worst;
}

namespace {

// Residual for k, abandoning the scan once it exceeds `cap`.
double capped_residual(std::span<const double> series, std::size_t begin, std::size_t end,
                       std::uint64_t k, double cap) {
  double worst = 0.0;
  for (std::size_t n = begin; n + k < end; ++n) {
    worst = std::max(worst, std::abs(series[n] - series[n + k]));
    if (worst > cap) break;
  }
  return worst;
}

std::optional<std::size_t> extinct_since(std::span<const double> series, double threshold) {
  std::size_t first = series.size();
  while (first > 0 && series[first - 1] < threshold) --first;
  if (first == series.size()) return std::nullopt;
  return first;
}

} // namespace

PeriodResult detect_period(std::span<const double> series, const DetectorConfig& cfg) {
  cfg.validate();
  if (series.size() < cfg.transient + cfg.window) {
    throw InsufficientDataError(fmt::format(
        "period detection needs {} values (transient {} + window {}), got {}",
        cfg.transient + cfg.window, cfg.transient, cfg.window, series.size()));
  }
  const std::size_t end = series.size();
  const std::size_t begin = end - cfg.window;

  PeriodResult result;
  result.residual = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 1; k <= cfg.max_period; ++k) {
    // Cap at the best residual so far: only a smaller one can matter.
    const double cap = std::max(cfg.epsilon, result.residual);
    const double r = capped_residual(series, begin, end, k, cap);
    if (r <= cfg.epsilon) {
      result.period = k;
      result.best_candidate = k;
      result.residual = r;
      result.cycle_values.assign(series.end() - static_cast<std::ptrdiff_t>(k), series.end());
      return result;
    }
    if (r < result.residual) {
      result.residual = r;
      result.best_candidate = k;
    }
  }
  return result;
}

bool detect_extinction(std::span<const double> series, double threshold, std::uint64_t hold) {
  if (hold < 1) throw ConfigError("extinction hold must be at least 1");
  if (series.size() < hold) {
    throw InsufficientDataError(fmt::format(
        "extinction test needs {} values, got {}", hold, series.size()));
  }
  return std::all_of(series.end() - static_cast<std::ptrdiff_t>(hold), series.end(),
                     [threshold](double v) { return v < threshold; });
}

double occupancy_dimension(std::span<const MapPoint> points, std::span<const int> grids) {
  constexpr std::size_t kMinPoints = 10'000;
  if (points.size() < kMinPoints) {
    throw InsufficientDataError(fmt::format(
        "occupancy dimension needs at least {} points, got {}", kMinPoints, points.size()));
  }
  if (grids.size() < 3) {
    throw InsufficientDataError("occupancy dimension needs at least 3 grid resolutions");
  }

  std::vector<double> log_g;
  std::vector<double> log_count;
  std::vector<std::uint64_t> cells(points.size());
  for (int g : grids) {
    if (g < 1) throw ConfigError("grid resolution must be positive");
    const auto side = static_cast<std::uint64_t>(g);
    auto cell_of = [&](double v) {
      const auto c = static_cast<std::int64_t>(std::floor(v * g));
      return static_cast<std::uint64_t>(std::clamp<std::int64_t>(c, 0, g - 1));
    };
    std::transform(points.begin(), points.end(), cells.begin(), [&](const MapPoint& p) {
      return cell_of(p.a) * side + cell_of(p.b);
    });
    std::sort(cells.begin(), cells.end());
    const auto occupied = std::unique(cells.begin(), cells.end()) - cells.begin();
    log_g.push_back(std::log(static_cast<double>(g)));
    log_count.push_back(std::log(static_cast<double>(occupied)));
  }

  const double n = static_cast<double>(log_g.size());
  const double mean_x = std::accumulate(log_g.begin(), log_g.end(), 0.0) / n;
  const double mean_y = std::accumulate(log_count.begin(), log_count.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < log_g.size(); ++i) {
    sxy += (log_g[i] - mean_x) * (log_count[i] - mean_y);
    sxx += (log_g[i] - mean_x) * (log_g[i] - mean_x);
  }
  if (sxx == 0.0) throw InsufficientDataError("occupancy grids must be distinct");
  return sxy / sxx;
}

Classification classify_series(std::span<const double> series, const DetectorConfig& cfg) {
  cfg.validate();
  Classification out;
  if (series.size() < cfg.transient + cfg.window) {
    out.attractor = AttractorClass::unresolved(fmt::format(
        "series has {} values; classification needs {}", series.size(),
        cfg.transient + cfg.window));
    return out;
  }

  // Extinct before Periodic: an extinct series also passes the period-1 test.
  if (detect_extinction(series, cfg.extinction_threshold, cfg.hold())) {
    out.attractor = AttractorClass::extinct();
    out.extinct_since = extinct_since(series, cfg.extinction_threshold);
    out.period = detect_period(series, cfg);
    return out;
  }

  out.period = detect_period(series, cfg);
  if (out.period.period) {
    out.attractor = AttractorClass::periodic(*out.period.period);
    return out;
  }

  const std::size_t end = series.size();
  if (end >= 2 * cfg.window && out.period.residual <= cfg.approach_tolerance) {
    const std::uint64_t k = out.period.best_candidate;
    const double earlier = period_residual(series, end - 2 * cfg.window, end - cfg.window, k);
    if (out.period.residual <= (1.0 - cfg.approach_min_drop) * earlier) {
      out.attractor = AttractorClass::unresolved(fmt::format("approaching period-{}", k));
      return out;
    }
  }

  const auto points = return_map(series, {end - cfg.window, end});
  if (points.points.size() < 10'000) {
    out.attractor = AttractorClass::unresolved(fmt::format(
        "window of {} values is too small for the occupancy test", cfg.window));
    return out;
  }
  const double dim = occupancy_dimension(points.points, cfg.occupancy_grids);
  out.occupancy_dimension = dim;
  if (dim <= cfg.orbital_max_dimension) {
    out.attractor = AttractorClass::orbital();
  } else if (dim >= cfg.chaotic_min_dimension) {
    out.attractor = AttractorClass::chaotic();
  } else {
    out.attractor = AttractorClass::unresolved(
        fmt::format("intermediate dimension {:.3f}", dim));
  }
  return out;
}

std::vector<Classification> classify(const Trajectory& trajectory, const DetectorConfig& cfg) {
  std::vector<Classification> out;
  out.reserve(trajectory.systems());
  for (std::size_t i = 0; i < trajectory.systems(); ++i) {
    out.push_back(classify_series(trajectory.channel(i), cfg));
  }
  return out;
}

TheoremCheck check_attractors_theorem(const BinaryConfig& config, const DetectorConfig& cfg) {
  cfg.validate();
  const auto traj = iterate(config, cfg.run_length());
  const auto x = traj.channel(0);
  const auto y = traj.channel(1);
  TheoremCheck check;
  check.x_extinct = detect_extinction(x, cfg.extinction_threshold, cfg.hold());
  check.y_extinct = detect_extinction(y, cfg.extinction_threshold, cfg.hold());
  check.x_period = detect_period(x, cfg).period;
  check.y_period = detect_period(y, cfg).period;
  return check;
}

bool verify_attractors_theorem(const BinaryConfig& config, const DetectorConfig& cfg) {
  return check_attractors_theorem(config, cfg).holds();
}

} // namespace logimap
