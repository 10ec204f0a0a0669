#pragma once

// Seeded random interaction networks and time-to-stability measurement.

#include "logimap/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace logimap {

struct FixedLaw {
  double value;
  friend bool operator==(const FixedLaw&, const FixedLaw&) = default;
};

/// Uniform on (lo, hi] for sensitivities and [lo, hi) for seeds.
struct UniformLaw {
  double lo;
  double hi;
  friend bool operator==(const UniformLaw&, const UniformLaw&) = default;
};

using DrawLaw = std::variant<FixedLaw, UniformLaw>;

struct NetworkSpec {
  std::size_t n_systems = 2;
  std::size_t pos_per_system = 0;
  std::size_t neg_per_system = 1;
  DrawLaw sensitivity_law = UniformLaw{0.0, 1.0};
  DrawLaw seed_law = UniformLaw{0.0, 1.0};
  std::uint64_t rng_seed = 0;

  /// Throws ConfigError for infeasible degrees or out-of-range laws.
  void validate() const;
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct StabilityCriterion {
  std::uint64_t max_stable_period = 2;
  std::uint64_t window = 32;
  double epsilon = 1e-6;

  void validate() const;
};

struct StabilityReport {
  /// Iteration at which the last system entered the low-period regime that
  /// every system then holds; the test confirms it window − 1 steps later.
  std::optional<std::uint64_t> r;
  std::optional<double> capacity;
  /// Iteration at which the confirmation happened.
  std::optional<std::uint64_t> detected_at;
  /// Per system: start of the stable stretch current when the run stopped.
  std::vector<std::optional<std::uint64_t>> first_stable_iter;
  /// Per system: time-average over the final window.
  std::vector<double> mean_values;
  double grand_mean = 0.0;
  double grand_std = 0.0;
  std::uint64_t iterations = 0;

  friend bool operator==(const StabilityReport&, const StabilityReport&) = default;
};

/// Every node draws pos_per_system positive and neg_per_system negative
/// partners, distinct and disjoint, uniformly from the other nodes. Node i
/// draws from its own counter stream, so the result depends only on the spec.
NetworkConfig build_network(const NetworkSpec& spec);

/// Iterates until every system passes the period ≤ max_stable_period test
/// over its trailing window, or max_iter is reached.
StabilityReport run_stability(const NetworkConfig& config, const StabilityCriterion& crit,
                              std::uint64_t max_iter);

/// Serial reference for run_stability (no OpenMP); reports are identical.
StabilityReport run_stability_serial(const NetworkConfig& config,
                                     const StabilityCriterion& crit, std::uint64_t max_iter);

struct SweepResult {
  std::size_t spec_index = 0;
  std::size_t replicate = 0;
  std::uint64_t rng_seed = 0;
  std::optional<StabilityReport> report;
  std::string error;
};

/// Seed of replicate r: the spec's own seed for r = 0, derived otherwise.
std::uint64_t replicate_seed(std::uint64_t spec_seed, std::size_t replicate);

/// specs × replicates, run over an OpenMP worker pool. Results come back in
/// (spec, replicate) order; a failing spec records its error and the sweep
/// continues.
std::vector<SweepResult> sweep_stability(const std::vector<NetworkSpec>& specs,
                                         const StabilityCriterion& crit,
                                         std::uint64_t max_iter, std::size_t replicates);

} // namespace logimap
