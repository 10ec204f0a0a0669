#include "logimap/network.hpp"

#include "logimap/errors.hpp"
#include "logimap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numeric>

namespace logimap {

namespace {

void validate_law(const DrawLaw& law, const char* what, bool sensitivity) {
  if (const auto* f = std::get_if<FixedLaw>(&law)) {
    const bool ok = sensitivity ? (f->value > 0.0 && f->value <= 1.0)
                                : (f->value >= 0.0 && f->value <= 1.0);
    if (!ok) throw ConfigError(fmt::format("fixed {} {} is out of range", what, f->value));
    return;
  }
  const auto& u = std::get<UniformLaw>(law);
  if (!(u.lo >= 0.0 && u.lo < u.hi && u.hi <= 1.0)) {
    throw ConfigError(fmt::format("uniform {} law [{}, {}] must satisfy 0 <= lo < hi <= 1",
                                  what, u.lo, u.hi));
  }
}

double draw_sensitivity(const DrawLaw& law, CounterRng& rng) {
  if (const auto* f = std::get_if<FixedLaw>(&law)) return f->value;
  const auto& u = std::get<UniformLaw>(law);
  return u.lo + (u.hi - u.lo) * rng.uniform_open_closed();
}

double draw_seed(const DrawLaw& law, CounterRng& rng) {
  if (const auto* f = std::get_if<FixedLaw>(&law)) return f->value;
  const auto& u = std::get<UniformLaw>(law);
  return u.lo + (u.hi - u.lo) * rng.uniform();
}

constexpr std::size_t kParallelNodeThreshold = 256;

// Ring of the last `window` states, slot t % window, node-major within a slot.
class History {
public:
  History(std::size_t nodes, std::size_t window)
      : nodes_(nodes), window_(window), data_(nodes * window) {}

  void store(std::uint64_t t, std::span<const double> values) {
    std::copy(values.begin(), values.end(), data_.begin() + slot(t) * nodes_);
  }
  double at(std::uint64_t t, std::size_t node) const { return data_[slot(t) * nodes_ + node]; }

private:
  std::size_t slot(std::uint64_t t) const { return static_cast<std::size_t>(t % window_); }
  std::size_t nodes_;
  std::size_t window_;
  std::vector<double> data_;
};

bool low_period(const History& h, std::uint64_t t, std::size_t node,
                const StabilityCriterion& crit) {
  const std::uint64_t first = t + 1 - crit.window;
  for (std::uint64_t k = 1; k <= crit.max_stable_period; ++k) {
    bool ok = true;
    for (std::uint64_t j = first; j + k <= t; ++j) {
      if (std::abs(h.at(j, node) - h.at(j + k, node)) > crit.epsilon) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

StabilityReport run_stability_impl(const NetworkConfig& config, const StabilityCriterion& crit,
                                   std::uint64_t max_iter, bool parallel) {
  crit.validate();
  if (!config.steppable()) {
    throw ConfigError(fmt::format("node {} has no in-edges; its update is undefined",
                                  config.isolated_nodes().front()));
  }
  const std::size_t m = config.size();
  const auto window = static_cast<std::size_t>(crit.window);
  History hist(m, window);
  std::vector<double> cur(config.seeds().begin(), config.seeds().end());
  std::vector<double> nxt(m);
  std::vector<char> stable_now(m, 0);
  std::vector<std::optional<std::uint64_t>> since(m);
  hist.store(0, cur);

  StabilityReport report;
  std::uint64_t t = 0;
  while (t < max_iter) {
    if (parallel) {
      step_network(config, cur, nxt);
    } else {
      step_network_serial(config, cur, nxt);
    }
    cur.swap(nxt);
    ++t;
    hist.store(t, cur);
    if (t < crit.window) continue;

    const auto nodes = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (parallel && m >= kParallelNodeThreshold)
    for (std::ptrdiff_t i = 0; i < nodes; ++i) {
      stable_now[i] = low_period(hist, t, static_cast<std::size_t>(i), crit) ? 1 : 0;
    }

    bool all = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (!stable_now[i]) {
        since[i].reset();
        all = false;
      } else if (!since[i]) {
        since[i] = t + 1 - crit.window;
      }
    }
    if (all) {
      report.detected_at = t;
      report.r = *std::max_element(since.begin(), since.end());
      report.capacity = 1.0 / static_cast<double>(*report.r);
      break;
    }
  }
  report.iterations = t;
  report.first_stable_iter = since;

  // Means over the final window (or everything recorded, if shorter).
  const std::uint64_t span_len = std::min<std::uint64_t>(crit.window, t + 1);
  report.mean_values.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::uint64_t s = t + 1 - span_len; s <= t; ++s) sum += hist.at(s, i);
    report.mean_values[i] = sum / static_cast<double>(span_len);
  }
  const double mm = static_cast<double>(m);
  report.grand_mean =
      std::accumulate(report.mean_values.begin(), report.mean_values.end(), 0.0) / mm;
  double var = 0.0;
  for (double v : report.mean_values) var += (v - report.grand_mean) * (v - report.grand_mean);
  report.grand_std = std::sqrt(var / mm);
  return report;
}

} // namespace

void NetworkSpec::validate() const {
  if (n_systems < 2) throw ConfigError("a network needs at least 2 systems");
  const std::size_t degree = pos_per_system + neg_per_system;
  if (degree == 0) throw ConfigError("every system needs at least one interaction");
  if (degree > n_systems - 1) {
    throw ConfigError(fmt::format("{} positive + {} negative partners exceed the {} other systems",
                                  pos_per_system, neg_per_system, n_systems - 1));
  }
  validate_law(sensitivity_law, "sensitivity", true);
  validate_law(seed_law, "seed", false);
}

void StabilityCriterion::validate() const {
  if (max_stable_period < 1) throw ConfigError("max_stable_period must be at least 1");
  if (window < 2 * max_stable_period) {
    throw ConfigError(fmt::format("stability window {} is shorter than 2 * max_stable_period",
                                  window));
  }
  if (!(epsilon > 0.0)) throw ConfigError("stability epsilon must be positive");
}

NetworkConfig build_network(const NetworkSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_systems;
  const std::size_t degree = spec.pos_per_system + spec.neg_per_system;

  CounterRng seed_rng(spec.rng_seed, 0);
  std::vector<double> seeds(n);
  for (auto& s : seeds) s = draw_seed(spec.seed_law, seed_rng);

  std::vector<NetworkEdge> edges;
  edges.reserve(n * degree);
  std::vector<std::size_t> others(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(spec.rng_seed, i + 1);
    for (std::size_t k = 0, v = 0; v < n; ++v) {
      if (v != i) others[k++] = v;
    }
    // Partial Fisher-Yates: the first `degree` slots are a uniform sample.
    for (std::size_t k = 0; k < degree; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.below(others.size() - k));
      std::swap(others[k], others[pick]);
    }
    for (std::size_t k = 0; k < degree; ++k) {
      const auto kind =
          k < spec.pos_per_system ? InteractionKind::Positive : InteractionKind::Negative;
      edges.push_back({i, others[k], kind, Sensitivity(draw_sensitivity(spec.sensitivity_law, rng))});
    }
  }
  return NetworkConfig(std::move(seeds), std::move(edges));
}

StabilityReport run_stability(const NetworkConfig& config, const StabilityCriterion& crit,
                              std::uint64_t max_iter) {
  return run_stability_impl(config, crit, max_iter, true);
}

StabilityReport run_stability_serial(const NetworkConfig& config,
                                     const StabilityCriterion& crit, std::uint64_t max_iter) {
  return run_stability_impl(config, crit, max_iter, false);
}

std::uint64_t replicate_seed(std::uint64_t spec_seed, std::size_t replicate) {
  return replicate == 0 ? spec_seed : derive_seed(spec_seed, replicate);
}

std::vector<SweepResult> sweep_stability(const std::vector<NetworkSpec>& specs,
                                         const StabilityCriterion& crit,
                                         std::uint64_t max_iter, std::size_t replicates) {
  if (specs.empty()) throw ConfigError("sweep needs at least one network spec");
  if (replicates < 1) throw ConfigError("sweep needs at least one replicate");
  crit.validate();

  std::vector<SweepResult> results(specs.size() * replicates);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t r = 0; r < replicates; ++r) {
      auto& out = results[s * replicates + r];
      out.spec_index = s;
      out.replicate = r;
      out.rng_seed = replicate_seed(specs[s].rng_seed, r);
    }
  }

  const auto tasks = static_cast<std::ptrdiff_t>(results.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < tasks; ++k) {
    auto& out = results[static_cast<std::size_t>(k)];
    try {
      NetworkSpec spec = specs[out.spec_index];
      spec.rng_seed = out.rng_seed;
      out.report = run_stability(build_network(spec), crit, max_iter);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  }
  return results;
}

} // namespace logimap
