#include "doctest.h"

#include "logimap/attractor.hpp"
#include "logimap/errors.hpp"
#include "logimap/rng.hpp"
#include "logimap/sampling.hpp"

#include <algorithm>
#include <cmath>

using namespace logimap;

namespace {

DetectorConfig small_detector() {
  DetectorConfig cfg;
  cfg.transient = 1000;
  cfg.window = 2000;
  cfg.max_period = 64;
  return cfg;
}

std::vector<double> logistic_series(double lambda, double x0, std::size_t n) {
  std::vector<double> v(n);
  v[0] = x0;
  for (std::size_t i = 1; i < n; ++i) v[i] = 4.0 * lambda * v[i - 1] * (1.0 - v[i - 1]);
  return v;
}

// Brute-force fixed points of the second iterate of the r = 3.2 map, by
// bisection on f(f(x)) − x away from the map's own fixed points.
std::vector<double> two_cycle_oracle() {
  auto f = [](double x) { return 3.2 * x * (1.0 - x); };
  auto h = [&](double x) { return f(f(x)) - x; };
  std::vector<double> roots;
  const double fixed = 1.0 - 1.0 / 3.2;
  const int n = 10'000;
  for (int i = 1; i < n; ++i) {
    double lo = static_cast<double>(i - 1) / n;
    double hi = static_cast<double>(i) / n;
    if (h(lo) * h(hi) > 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(lo) * h(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double r = 0.5 * (lo + hi);
    if (r > 1e-6 && std::abs(r - fixed) > 1e-6) roots.push_back(r);
  }
  return roots;
}

} // namespace

TEST_CASE("detector config validation") {
  DetectorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.window = 2000;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_period = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("constant series has period 1") {
  const std::vector<double> v(3000, 0.5);
  const auto p = detect_period(v, small_detector());
  REQUIRE(p.period);
  CHECK(*p.period == 1);
  CHECK(p.cycle_values == std::vector<double>{0.5});
  CHECK(p.residual <= small_detector().epsilon);
}

TEST_CASE("short series is insufficient") {
  const std::vector<double> v(100, 0.5);
  CHECK_THROWS_AS(detect_period(v, small_detector()), InsufficientDataError);
}

TEST_CASE("logistic lambda 0.8 settles on the brute-force 2-cycle") {
  const auto oracle = two_cycle_oracle();
  REQUIRE(oracle.size() == 2);
  CHECK(oracle[0] == doctest::Approx(0.5130).epsilon(1e-3));
  CHECK(oracle[1] == doctest::Approx(0.7995).epsilon(1e-3));

  DetectorConfig cfg;
  const auto v = logistic_series(0.8, 0.3, cfg.transient + cfg.window);
  const auto p = detect_period(v, cfg);
  REQUIRE(p.period);
  CHECK(*p.period == 2);
  auto cycle = p.cycle_values;
  std::sort(cycle.begin(), cycle.end());
  CHECK(cycle[0] == doctest::Approx(oracle[0]).epsilon(1e-9));
  CHECK(cycle[1] == doctest::Approx(oracle[1]).epsilon(1e-9));
}

TEST_CASE("detected period is minimal and monotone in epsilon") {
  const auto cfg = small_detector();
  for (std::uint64_t k : {1u, 2u, 3u, 4u, 6u, 12u}) {
    std::vector<double> v(cfg.transient + cfg.window);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.1 + 0.05 * static_cast<double>(i % k);
    const auto p = detect_period(v, cfg);
    REQUIRE(p.period);
    CHECK(*p.period == k);
    for (std::uint64_t d = 1; d < k; ++d) {
      if (k % d == 0) CHECK(period_residual(v, v.size() - cfg.window, v.size(), d) > cfg.epsilon);
    }
  }
  // A slowly converging series: detected at loose tolerances only, and the
  // period never grows as epsilon grows.
  const auto v = logistic_series(0.8, 0.3, 3000);
  std::uint64_t last = 1025;
  bool seen = false;
  for (double eps : {1e-15, 1e-12, 1e-9, 1e-6, 1e-3, 1e-1, 1.0}) {
    auto c = cfg;
    c.epsilon = eps;
    const auto p = detect_period(v, c);
    if (seen) REQUIRE(p.period);
    if (p.period) {
      seen = true;
      CHECK(*p.period <= last);
      last = *p.period;
    }
  }
  CHECK(seen);
}

TEST_CASE("fig 8 configuration has period 16") {
  const auto c = BinaryConfig::nn(0.99988, 0.9976, 0.765, 0.234);
  DetectorConfig cfg;
  const auto t = iterate(c, cfg.run_length());
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const auto p = detect_period(t.channel(ch), cfg);
    REQUIRE(p.period);
    CHECK(*p.period == 16);
  }
}

TEST_CASE("extinction detection") {
  CHECK(detect_extinction(std::vector<double>(100, 0.0), 1e-6, 100));
  CHECK_FALSE(detect_extinction(std::vector<double>(100, 0.5), 1e-6, 100));
  const auto t = iterate(BinaryConfig::pp(0.9, 0.8, 0.3, 0.7), 100'000);
  CHECK(detect_extinction(t.channel(0), 1e-6, 20'000));
  CHECK(detect_extinction(t.channel(1), 1e-6, 20'000));
}

TEST_CASE("classifier orders extinct before periodic") {
  const auto cfg = small_detector();
  const std::vector<double> zeros(cfg.transient + cfg.window, 0.0);
  // The period test alone accepts the zero series.
  REQUIRE(detect_period(zeros, cfg).period == 1u);
  const auto c = classify_series(zeros, cfg);
  CHECK(c.attractor.kind() == AttractorClass::Kind::Extinct);
  CHECK(c.extinct_since == 0u);
}

TEST_CASE("classifier results for reference configurations") {
  DetectorConfig cfg;
  SUBCASE("fig 2 reaches a 2-cycle within a million steps") {
    const auto t = iterate(BinaryConfig::nn(0.9998, 0.999, 0.001, 0.9), 1'000'000,
                           {1'000'000 - cfg.transient - cfg.window + 1, 1});
    for (const auto& c : classify(t, cfg)) CHECK(c.attractor == AttractorClass::periodic(2));
  }
  SUBCASE("fig 3 is orbital") {
    const auto t = iterate(BinaryConfig::pn(0.988, 0.3, 0.9, 0.9), cfg.run_length());
    for (const auto& c : classify(t, cfg)) {
      CHECK(c.attractor.kind() == AttractorClass::Kind::Orbital);
      REQUIRE(c.occupancy_dimension);
      CHECK(*c.occupancy_dimension == doctest::Approx(1.0).epsilon(0.1));
    }
  }
  SUBCASE("short series is unresolved") {
    const auto t = iterate(BinaryConfig::nn(0.5, 0.5, 0.2, 0.3), 100);
    CHECK(classify(t, cfg)[0].attractor.kind() == AttractorClass::Kind::Unresolved);
  }
}

TEST_CASE("slowly converging series reads as approaching") {
  auto cfg = small_detector();
  std::vector<double> v(cfg.transient + 2 * cfg.window);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sign = i % 2 ? 1.0 : -1.0;
    v[i] = 0.5 + 0.2 * sign + 1e-3 * std::exp(-static_cast<double>(i) / 1500.0) * sign;
  }
  cfg.epsilon = 1e-12;
  const auto c = classify_series(v, cfg);
  CHECK(c.attractor.kind() == AttractorClass::Kind::Unresolved);
  CHECK(c.attractor.note() == "approaching period-2");
}

TEST_CASE("occupancy dimension sanity") {
  const std::vector<int> grids = {64, 128, 256, 512};
  std::vector<MapPoint> same(20'000, MapPoint{0.3, 0.6});
  CHECK(occupancy_dimension(same, grids) == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<MapPoint> line;
  for (int i = 0; i < 100'000; ++i) {
    const double t = (i + 0.5) / 100'000.0;
    line.push_back({t, t});
  }
  CHECK(std::abs(occupancy_dimension(line, grids) - 1.0) <= 0.15);

  CounterRng rng(1, 2);
  std::vector<MapPoint> area(1'000'000);
  for (auto& p : area) p = {rng.uniform(), rng.uniform()};
  CHECK(std::abs(occupancy_dimension(area, grids) - 2.0) <= 0.15);

  CHECK_THROWS_AS(occupancy_dimension(std::vector<MapPoint>(10, MapPoint{0, 0}), grids),
                  InsufficientDataError);
}

TEST_CASE("classification is deterministic") {
  DetectorConfig cfg;
  const auto t = iterate(BinaryConfig::nn(0.8, 0.1, 0.22, 0.12), cfg.run_length());
  CHECK(classify(t, cfg) == classify(t, cfg));
}

TEST_CASE("attractors theorem on reference and random configurations") {
  DetectorConfig cfg;
  const auto fig2 = check_attractors_theorem(BinaryConfig::nn(0.9998, 0.999, 0.001, 0.9), cfg);
  CHECK(fig2.x_period == 2u);
  CHECK(fig2.holds());
  const auto fig8 =
      check_attractors_theorem(BinaryConfig::nn(0.99988, 0.9976, 0.765, 0.234), cfg);
  CHECK(fig8.x_period == 16u);
  CHECK(fig8.y_period == 16u);
  CHECK(fig8.holds());

  cfg.max_period = 64;
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto c = rotating_binary_config(31, i);
    const auto check = check_attractors_theorem(c, cfg);
    if (check.applicable() && (check.x_period || check.y_period)) {
      INFO("config " << i << " " << c.label());
      CHECK(check.consistent());
    }
  }
}

TEST_CASE("extinct predator puts the theorem out of reach") {
  TheoremCheck t;
  t.x_extinct = true;
  t.x_period = 1;
  CHECK_FALSE(t.applicable());
  CHECK(t.holds());
}
