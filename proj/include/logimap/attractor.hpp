#pragma once

// Period detection under finite precision, extinction detection, outcome
// classification and the binary attractors theorem check.

#include "logimap/dynamics.hpp"
#include "logimap/return_map.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace logimap {

struct DetectorConfig {
  std::uint64_t transient = 100'000;
  std::uint64_t window = 20'000;
  double epsilon = 1e-9;
  std::uint64_t max_period = 1024;

  double extinction_threshold = 1e-6;
  /// Trailing values that must all sit below the threshold; 0 means `window`.
  std::uint64_t extinction_hold = 0;

  /// Best-candidate residual at or below this, and shrinking by at least
  /// approach_min_drop (relative) from the previous window to the final
  /// one, reads as "approaching period-k". Quasi-periodic orbits keep a
  /// stationary residual and fail the drop test.
  double approach_tolerance = 1e-3;
  double approach_min_drop = 0.1;

  std::vector<int> occupancy_grids = {64, 128, 256, 512};
  double orbital_max_dimension = 1.2;
  double chaotic_min_dimension = 1.8;

  /// Throws ConfigError unless window >= 2·max_period, epsilon > 0,
  /// max_period >= 1 and the grid/dimension settings are coherent.
  void validate() const;
  std::uint64_t hold() const { return extinction_hold == 0 ? window : extinction_hold; }
  /// Iterations a run needs so the detector sees transient + window values.
  std::uint64_t run_length() const { return transient + window - 1; }
};

struct PeriodResult {
  std::optional<std::uint64_t> period;
  /// The last k values of the window, in time order (empty when no period).
  std::vector<double> cycle_values;
  /// max |x_n − x_{n+k}| over the window for the detected k, or for
  /// best_candidate when nothing was detected.
  double residual = 0.0;
  /// k ≤ max_period with the smallest residual.
  std::uint64_t best_candidate = 1;

  friend bool operator==(const PeriodResult&, const PeriodResult&) = default;
};

class AttractorClass {
public:
  enum class Kind { Periodic, Chaotic, Orbital, Extinct, Unresolved };

  static AttractorClass periodic(std::uint64_t k);
  static AttractorClass chaotic() { return AttractorClass(Kind::Chaotic); }
  static AttractorClass orbital() { return AttractorClass(Kind::Orbital); }
  static AttractorClass extinct() { return AttractorClass(Kind::Extinct); }
  static AttractorClass unresolved(std::string note);

  Kind kind() const { return kind_; }
  /// Period for Periodic; 0 otherwise.
  std::uint64_t period() const { return k_; }
  const std::string& note() const { return note_; }
  /// "periodic", "chaotic", "orbital", "extinct" or "unresolved".
  std::string_view name() const;

  friend bool operator==(const AttractorClass&, const AttractorClass&) = default;

private:
  explicit AttractorClass(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::uint64_t k_ = 0;
  std::string note_;
};

/// Per-system classification with the evidence that produced it.
struct Classification {
  AttractorClass attractor = AttractorClass::unresolved("not classified");
  PeriodResult period;
  std::optional<double> occupancy_dimension;
  /// First recorded index from which the series stays below the
  /// extinction threshold (set for Extinct).
  std::optional<std::size_t> extinct_since;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Residual max |x_n − x_{n+k}| over window [begin, end).
double period_residual(std::span<const double> series, std::size_t begin, std::size_t end,
                       std::uint64_t k);

/// Smallest k ≤ max_period whose residual over the final `window` values
/// is ≤ epsilon. Requires series.size() ≥ transient + window.
PeriodResult detect_period(std::span<const double> series, const DetectorConfig& cfg);

/// True iff the last `hold` values are all below `threshold`.
bool detect_extinction(std::span<const double> series, double threshold, std::uint64_t hold);

/// Box-counting slope of log(occupied cells) against log(G).
double occupancy_dimension(std::span<const MapPoint> points, std::span<const int> grids);

/// Extinct, then Periodic, then approaching-period, then occupancy slope.
Classification classify_series(std::span<const double> series, const DetectorConfig& cfg);
std::vector<Classification> classify(const Trajectory& trajectory, const DetectorConfig& cfg);

struct TheoremCheck {
  std::optional<std::uint64_t> x_period;
  std::optional<std::uint64_t> y_period;
  bool x_extinct = false;
  bool y_extinct = false;

  /// The theorem's argument divides by x_n(1 − x_n); an extinct partner
  /// leaves the other system free, so extinct runs are out of its reach.
  bool applicable() const { return !x_extinct && !y_extinct; }
  bool consistent() const { return x_period == y_period; }
  bool holds() const { return !applicable() || consistent(); }
};

TheoremCheck check_attractors_theorem(const BinaryConfig& config, const DetectorConfig& cfg);
/// check_attractors_theorem(...).holds().
bool verify_attractors_theorem(const BinaryConfig& config, const DetectorConfig& cfg);

} // namespace logimap
