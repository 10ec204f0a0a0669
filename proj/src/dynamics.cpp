#include "logimap/dynamics.hpp"

#include "logimap/errors.hpp"

#include <algorithm>
#include <fmt/core.h>

namespace logimap {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

void require_unit(double v, const char* what) {
  if (!in_unit(v)) {
    throw DomainError(fmt::format("{} = {} is outside [0, 1]", what, v));
  }
}

// Below this node count the thread fork/join costs more than the step.
constexpr std::size_t kParallelNodeThreshold = 256;

void check_network_step(const NetworkConfig& config, std::span<const double> values,
                        std::span<double> out) {
  if (values.size() != config.size() || out.size() != config.size()) {
    throw ConfigError(fmt::format("network has {} nodes but {} values were given",
                                  config.size(), values.size()));
  }
  if (!config.steppable()) {
    throw ConfigError(fmt::format("node {} has no in-edges; its update is undefined",
                                  config.isolated_nodes().front()));
  }
}

} // namespace

std::string_view to_string(InteractionKind kind) {
  return kind == InteractionKind::Negative ? "negative" : "positive";
}

InteractionKind parse_interaction_kind(std::string_view text) {
  if (text == "negative" || text == "N" || text == "-") {
    return InteractionKind::Negative;
  }
  if (text == "positive" || text == "P" || text == "+") {
    return InteractionKind::Positive;
  }
  throw ConfigError(fmt::format("unknown interaction kind '{}'", text));
}

Sensitivity::Sensitivity(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw DomainError(fmt::format("sensitivity {} is outside (0, 1]", value));
  }
}

BinaryConfig::BinaryConfig(InteractionKind kind_x, InteractionKind kind_y,
                           Sensitivity s_x, Sensitivity s_y, double x0, double y0)
    : kind_x(kind_x), kind_y(kind_y), s_x(s_x), s_y(s_y), x0(x0), y0(y0) {
  require_unit(x0, "x0");
  require_unit(y0, "y0");
}

BinaryConfig BinaryConfig::nn(double s_x, double s_y, double x0, double y0) {
  return {InteractionKind::Negative, InteractionKind::Negative, Sensitivity(s_x),
          Sensitivity(s_y), x0, y0};
}

BinaryConfig BinaryConfig::pn(double s_x, double s_y, double x0, double y0) {
  return {InteractionKind::Positive, InteractionKind::Negative, Sensitivity(s_x),
          Sensitivity(s_y), x0, y0};
}

BinaryConfig BinaryConfig::pp(double s_x, double s_y, double x0, double y0) {
  return {InteractionKind::Positive, InteractionKind::Positive, Sensitivity(s_x),
          Sensitivity(s_y), x0, y0};
}

std::string_view BinaryConfig::label() const {
  const bool px = kind_x == InteractionKind::Positive;
  const bool py = kind_y == InteractionKind::Positive;
  if (px && py) return "PP";
  if (px) return "PN";
  if (py) return "NP";
  return "NN";
}

NetworkConfig::NetworkConfig(std::vector<double> seeds, std::vector<NetworkEdge> edges)
    : seeds_(std::move(seeds)) {
  const std::size_t m = seeds_.size();
  if (m < 2) {
    throw ConfigError(fmt::format("a network needs at least 2 nodes, got {}", m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_unit(seeds_[i])) {
      throw ConfigError(fmt::format("seed of node {} = {} is outside [0, 1]", i, seeds_[i]));
    }
  }

  offsets_.assign(m + 1, 0);
  for (const auto& e : edges) {
    if (e.target >= m || e.source >= m) {
      throw ConfigError(fmt::format("edge {} <- {} references a node outside 0..{}",
                                    e.target, e.source, m - 1));
    }
    if (e.target == e.source) {
      throw ConfigError(fmt::format("self-edge on node {}", e.target));
    }
    ++offsets_[e.target + 1];
  }
  for (std::size_t i = 0; i < m; ++i) {
    offsets_[i + 1] += offsets_[i];
  }

  // Counting sort keeps insertion order within each target.
  in_.resize(edges.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    in_[cursor[e.target]++] = {static_cast<std::uint32_t>(e.source), e.kind, e.s.value()};
  }

  for (std::size_t i = 0; i < m; ++i) {
    auto node = std::span(in_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
    std::vector<std::uint32_t> sources;
    sources.reserve(node.size());
    for (const auto& e : node) sources.push_back(e.source);
    std::sort(sources.begin(), sources.end());
    if (std::adjacent_find(sources.begin(), sources.end()) != sources.end()) {
      throw ConfigError(fmt::format("node {} has more than one edge from the same source", i));
    }
  }
}

NetworkConfig NetworkConfig::from_binary(const BinaryConfig& config) {
  return NetworkConfig({config.x0, config.y0},
                       {{0, 1, config.kind_x, config.s_x}, {1, 0, config.kind_y, config.s_y}});
}

std::span<const NetworkConfig::InEdge> NetworkConfig::in_edges(std::size_t node) const {
  return std::span(in_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

std::size_t NetworkConfig::in_degree(std::size_t node) const {
  return offsets_[node + 1] - offsets_[node];
}

std::vector<NetworkEdge> NetworkConfig::edges() const {
  std::vector<NetworkEdge> out;
  out.reserve(in_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : in_edges(i)) {
      out.push_back({i, e.source, e.kind, Sensitivity(e.s)});
    }
  }
  return out;
}

bool NetworkConfig::steppable() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (in_degree(i) == 0) return false;
  }
  return true;
}

std::vector<std::size_t> NetworkConfig::isolated_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (in_degree(i) == 0) out.push_back(i);
  }
  return out;
}

bool operator==(const NetworkConfig& a, const NetworkConfig& b) {
  if (a.seeds_ != b.seeds_ || a.offsets_ != b.offsets_ || a.in_.size() != b.in_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.in_.size(); ++k) {
    const auto& ea = a.in_[k];
    const auto& eb = b.in_[k];
    if (ea.source != eb.source || ea.kind != eb.kind || ea.s != eb.s) return false;
  }
  return true;
}

double logistic_step(double lambda, double x) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw DomainError(fmt::format("lambda = {} is outside (0, 1]", lambda));
  }
  require_unit(x, "x");
  return 4.0 * lambda * x * (1.0 - x);
}

double interaction_coefficient(InteractionKind kind, Sensitivity s, double partner) {
  require_unit(partner, "partner");
  return detail::coefficient(kind, s.value(), partner);
}

StatePair step_binary(const BinaryConfig& config, const StatePair& state) {
  require_unit(state.x, "x");
  require_unit(state.y, "y");
  StatePair next = state;
  detail::step_binary_inplace(config, next.x, next.y);
  ++next.n;
  return next;
}

void step_network(const NetworkConfig& config, std::span<const double> values,
                  std::span<double> out) {
  check_network_step(config, values, out);
  const auto m = static_cast<std::ptrdiff_t>(config.size());
#pragma omp parallel for schedule(static) if (config.size() >= kParallelNodeThreshold)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    out[i] = detail::step_node(config, values, static_cast<std::size_t>(i));
  }
}

std::vector<double> step_network(const NetworkConfig& config,
                                 std::span<const double> values) {
  std::vector<double> out(values.size());
  step_network(config, values, out);
  return out;
}

void step_network_serial(const NetworkConfig& config, std::span<const double> values,
                         std::span<double> out) {
  check_network_step(config, values, out);
  for (std::size_t i = 0; i < config.size(); ++i) {
    out[i] = detail::step_node(config, values, i);
  }
}

Trajectory::Trajectory(std::size_t systems, RecordWindow window)
    : window_(window), channels_(systems) {
  if (window_.stride == 0) {
    throw ConfigError("recording stride must be at least 1");
  }
}

void Trajectory::reserve(std::size_t rows) {
  steps_.reserve(rows);
  for (auto& c : channels_) c.reserve(rows);
}

void Trajectory::append(std::uint64_t n, std::span<const double> values) {
  steps_.push_back(n);
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    channels_[i].push_back(values[i]);
  }
}

std::span<const double> Trajectory::channel(std::size_t system) const {
  return channels_.at(system);
}

namespace {

std::size_t expected_rows(std::uint64_t n_steps, RecordWindow w) {
  if (w.start > n_steps) return 0;
  return static_cast<std::size_t>((n_steps - w.start) / w.stride + 1);
}

} // namespace

Trajectory iterate(const BinaryConfig& config, std::uint64_t n_steps, RecordWindow window) {
  Trajectory traj(2, window);
  traj.reserve(expected_rows(n_steps, window));
  double x = config.x0;
  double y = config.y0;
  std::uint64_t n = 0;
  auto record = [&] {
    const double row[2] = {x, y};
    traj.append(n, row);
  };
  if (window.records(0)) record();

  // Jump straight to the first recorded step, then stride between records.
  std::uint64_t next = window.start == 0 ? window.stride : window.start;
  while (n < n_steps) {
    const std::uint64_t target = std::min(next, n_steps);
    for (; n < target; ++n) {
      detail::step_binary_inplace(config, x, y);
    }
    if (n == next) {
      record();
      next += window.stride;
    }
  }
  return traj;
}

Trajectory iterate(const NetworkConfig& config, std::uint64_t n_steps, RecordWindow window) {
  Trajectory traj(config.size(), window);
  traj.reserve(expected_rows(n_steps, window));
  std::vector<double> cur(config.seeds().begin(), config.seeds().end());
  std::vector<double> nxt(cur.size());
  if (window.records(0)) traj.append(0, cur);
  for (std::uint64_t n = 1; n <= n_steps; ++n) {
    step_network(config, cur, nxt);
    cur.swap(nxt);
    if (window.records(n)) traj.append(n, cur);
  }
  return traj;
}

StatePair advance(const BinaryConfig& config, std::uint64_t n_steps) {
  double x = config.x0;
  double y = config.y0;
  for (std::uint64_t n = 0; n < n_steps; ++n) {
    detail::step_binary_inplace(config, x, y);
  }
  return {x, y, n_steps};
}

} // namespace logimap
