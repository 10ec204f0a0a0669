#pragma once

// Coupled logistic recursions: the baseline map, binary NN/PN/PP
// interactions and m-ary interaction networks. All updates are
// synchronous: every new value is computed from pre-step values only.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace logimap {

enum class InteractionKind { Negative, Positive };

std::string_view to_string(InteractionKind kind);
InteractionKind parse_interaction_kind(std::string_view text);

/// Coupling strength in (0, 1]. Construction rejects anything else.
class Sensitivity {
public:
  explicit Sensitivity(double value);
  double value() const { return value_; }
  friend bool operator==(Sensitivity, Sensitivity) = default;

private:
  double value_;
};

/// Two interacting systems. kind_x is the effect of Y on X and kind_y the
/// effect of X on Y; in a PN pair X is the predator (kind_x = Positive).
struct BinaryConfig {
  InteractionKind kind_x;
  InteractionKind kind_y;
  Sensitivity s_x;
  Sensitivity s_y;
  double x0;
  double y0;

  BinaryConfig(InteractionKind kind_x, InteractionKind kind_y, Sensitivity s_x,
               Sensitivity s_y, double x0, double y0);

  static BinaryConfig nn(double s_x, double s_y, double x0, double y0);
  static BinaryConfig pn(double s_x, double s_y, double x0, double y0);
  static BinaryConfig pp(double s_x, double s_y, double x0, double y0);

  /// "NN", "PN", "PP" or "NP".
  std::string_view label() const;

  friend bool operator==(const BinaryConfig&, const BinaryConfig&) = default;
};

struct StatePair {
  double x = 0.0;
  double y = 0.0;
  std::uint64_t n = 0;

  friend bool operator==(const StatePair&, const StatePair&) = default;
};

/// Effect of system `source` on system `target`.
struct NetworkEdge {
  std::size_t target;
  std::size_t source;
  InteractionKind kind;
  Sensitivity s;
};

/// m systems with signed, sensitivity-weighted directed edges. In-edges of
/// each node are kept in insertion order; the per-node sum runs in that
/// order, so relabelling nodes without reordering edges is bit-exact.
class NetworkConfig {
public:
  struct InEdge {
    std::uint32_t source;
    InteractionKind kind;
    double s;
  };

  NetworkConfig(std::vector<double> seeds, std::vector<NetworkEdge> edges);

  /// The m = 2 fully connected network equivalent to `config`.
  static NetworkConfig from_binary(const BinaryConfig& config);

  std::size_t size() const { return seeds_.size(); }
  std::span<const double> seeds() const { return seeds_; }
  std::span<const InEdge> in_edges(std::size_t node) const;
  std::size_t in_degree(std::size_t node) const;
  std::size_t edge_count() const { return in_.size(); }
  std::vector<NetworkEdge> edges() const;

  /// True when every node has at least one in-edge.
  bool steppable() const;
  /// Nodes with zero in-edges.
  std::vector<std::size_t> isolated_nodes() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&);

private:
  std::vector<double> seeds_;
  std::vector<std::size_t> offsets_;
  std::vector<InEdge> in_;
};

namespace detail {

inline double coefficient(InteractionKind kind, double s, double partner) {
  return kind == InteractionKind::Negative ? 4.0 * (1.0 - s * partner)
                                           : 4.0 * s * partner;
}

inline void step_binary_inplace(const BinaryConfig& c, double& x, double& y) {
  const double gx = coefficient(c.kind_x, c.s_x.value(), y);
  const double gy = coefficient(c.kind_y, c.s_y.value(), x);
  const double nx = gx * x * (1.0 - x);
  const double ny = gy * y * (1.0 - y);
  x = nx;
  y = ny;
}

inline double step_node(const NetworkConfig& net, std::span<const double> values,
                        std::size_t i) {
  const auto edges = net.in_edges(i);
  double acc = 0.0;
  for (const auto& e : edges) {
    acc += coefficient(e.kind, e.s, values[e.source]);
  }
  const double v = values[i];
  return acc / static_cast<double>(edges.size()) * v * (1.0 - v);
}

} // namespace detail

/// 4·lambda·x·(1 − x) for lambda in (0, 1], x in [0, 1].
double logistic_step(double lambda, double x);

/// Negative: 4(1 − s·partner). Positive: 4·s·partner.
double interaction_coefficient(InteractionKind kind, Sensitivity s, double partner);

StatePair step_binary(const BinaryConfig& config, const StatePair& state);

/// Parallel (OpenMP over nodes) network step. Throws ConfigError when a
/// node has no in-edges or sizes disagree.
void step_network(const NetworkConfig& config, std::span<const double> values,
                  std::span<double> out);
std::vector<double> step_network(const NetworkConfig& config,
                                 std::span<const double> values);

/// Single-threaded reference for step_network; results are bit-identical.
void step_network_serial(const NetworkConfig& config, std::span<const double> values,
                         std::span<double> out);

/// Which iterations a Trajectory keeps: n >= start and (n − start) % stride == 0.
struct RecordWindow {
  std::uint64_t start = 0;
  std::uint64_t stride = 1;

  bool records(std::uint64_t n) const {
    return n >= start && (n - start) % stride == 0;
  }
  friend bool operator==(const RecordWindow&, const RecordWindow&) = default;
};

/// Recorded values per system. Channel 0 is x and channel 1 is y for binary
/// runs; network runs have one channel per node.
class Trajectory {
public:
  Trajectory(std::size_t systems, RecordWindow window);

  void append(std::uint64_t n, std::span<const double> values);
  void reserve(std::size_t rows);

  std::size_t systems() const { return channels_.size(); }
  std::size_t size() const { return steps_.size(); }
  RecordWindow window() const { return window_; }
  std::span<const std::uint64_t> steps() const { return steps_; }
  std::span<const double> channel(std::size_t system) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
  RecordWindow window_;
  std::vector<std::uint64_t> steps_;
  std::vector<std::vector<double>> channels_;
};

Trajectory iterate(const BinaryConfig& config, std::uint64_t n_steps,
                   RecordWindow window = {});
Trajectory iterate(const NetworkConfig& config, std::uint64_t n_steps,
                   RecordWindow window = {});

/// Runs n_steps without recording and returns the final state.
StatePair advance(const BinaryConfig& config, std::uint64_t n_steps);

} // namespace logimap
