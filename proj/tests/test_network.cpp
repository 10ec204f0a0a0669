#include "doctest.h"

#include "logimap/attractor.hpp"
#include "logimap/errors.hpp"
#include "logimap/network.hpp"

#include <algorithm>
#include <set>

using namespace logimap;

TEST_CASE("spec validation") {
  NetworkSpec spec;
  spec.n_systems = 5;
  spec.pos_per_system = 2;
  spec.neg_per_system = 3;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.neg_per_system = 0;
  spec.pos_per_system = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.neg_per_system = 1;
  spec.sensitivity_law = UniformLaw{0.5, 1.5};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.sensitivity_law = FixedLaw{0.0};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.sensitivity_law = FixedLaw{0.4};
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("smallest spec is the binary NN pair") {
  NetworkSpec spec;
  spec.n_systems = 2;
  spec.pos_per_system = 0;
  spec.neg_per_system = 1;
  spec.sensitivity_law = FixedLaw{0.7};
  spec.seed_law = FixedLaw{0.3};
  const auto net = build_network(spec);
  CHECK(net == NetworkConfig::from_binary(BinaryConfig::nn(0.7, 0.7, 0.3, 0.3)));
}

TEST_CASE("build_network is deterministic and degree-correct") {
  NetworkSpec spec;
  spec.n_systems = 1000;
  spec.pos_per_system = 100;
  spec.neg_per_system = 400;
  spec.rng_seed = 42;
  const auto net = build_network(spec);
  CHECK(build_network(spec) == net);
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto edges = net.in_edges(i);
    REQUIRE(net.in_degree(i) == 500);
    std::set<std::uint32_t> pos;
    std::set<std::uint32_t> neg;
    for (const auto& e : edges) {
      REQUIRE(e.source != i);
      REQUIRE(e.s > 0.0);
      REQUIRE(e.s <= 1.0);
      (e.kind == InteractionKind::Positive ? pos : neg).insert(e.source);
    }
    REQUIRE(pos.size() == 100);
    REQUIRE(neg.size() == 400);
  }
  for (double s : net.seeds()) {
    REQUIRE(s >= 0.0);
    REQUIRE(s < 1.0);
  }
  spec.rng_seed = 43;
  CHECK_FALSE(build_network(spec) == net);
}

TEST_CASE("extinct PP pair counts as stable with mean near zero") {
  const auto net = NetworkConfig::from_binary(BinaryConfig::pp(0.9, 0.8, 0.3, 0.7));
  const auto report = run_stability(net, {}, 200'000);
  REQUIRE(report.r);
  for (double m : report.mean_values) CHECK(m < 1e-6);
}

TEST_CASE("stability report invariants and serial agreement") {
  NetworkSpec spec;
  spec.n_systems = 300;
  spec.pos_per_system = 30;
  spec.neg_per_system = 120;
  spec.rng_seed = 9;
  const auto net = build_network(spec);
  StabilityCriterion crit;
  const auto report = run_stability(net, crit, 5000);
  CHECK(report == run_stability_serial(net, crit, 5000));
  REQUIRE(report.r);
  REQUIRE(report.capacity);
  REQUIRE(report.detected_at);
  CHECK(*report.capacity * static_cast<double>(*report.r) == doctest::Approx(1.0));
  CHECK(*report.capacity > 0.0);
  CHECK(*report.capacity <= 1.0);
  CHECK(*report.detected_at == *report.r + crit.window - 1);
  std::uint64_t latest = 0;
  for (const auto& f : report.first_stable_iter) {
    REQUIRE(f);
    CHECK(*f <= *report.r);
    latest = std::max(latest, *f);
  }
  CHECK(latest == *report.r);
  CHECK(report.grand_mean >= 0.0);
  CHECK(report.grand_mean <= 1.0);
  CHECK(report.mean_values.size() == 300);
}

TEST_CASE("stability report agrees with the binary classifier") {
  // A pair whose 2-cycle the criterion accepts once it has settled.
  const auto c = BinaryConfig::nn(0.9998, 0.999, 0.001, 0.9);
  const auto report = run_stability(NetworkConfig::from_binary(c), {}, 1'000'000);
  const auto cls = classify(iterate(c, DetectorConfig{}.run_length()), DetectorConfig{});
  REQUIRE(report.r);
  for (const auto& k : cls) CHECK(k.attractor.period() <= 2);
}

TEST_CASE("unstable runs report no r") {
  const auto net = NetworkConfig::from_binary(BinaryConfig::nn(0.1, 0.1, 0.2, 0.3));
  const auto report = run_stability(net, {}, 500);
  CHECK_FALSE(report.r);
  CHECK_FALSE(report.capacity);
  CHECK(report.iterations == 500);
}

TEST_CASE("sweeps are ordered and reproducible") {
  NetworkSpec a;
  a.n_systems = 50;
  a.pos_per_system = 5;
  a.neg_per_system = 20;
  a.rng_seed = 1;
  NetworkSpec bad = a;
  bad.pos_per_system = 60;
  const auto res = sweep_stability({a, bad}, {}, 2000, 3);
  REQUIRE(res.size() == 6);
  for (std::size_t i = 0; i < res.size(); ++i) {
    CHECK(res[i].spec_index == i / 3);
    CHECK(res[i].replicate == i % 3);
  }
  CHECK(res[0].rng_seed == 1);
  CHECK(res[1].rng_seed != res[2].rng_seed);
  CHECK(res[0].report == run_stability(build_network(a), {}, 2000));
  CHECK_FALSE(res[3].report);
  CHECK_FALSE(res[3].error.empty());

  const auto again = sweep_stability({a, bad}, {}, 2000, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again[i].report == res[i].report);
  CHECK_FALSE(res[1].report == res[2].report);
}
