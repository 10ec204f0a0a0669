// Serial vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "logimap/network.hpp"

#include <benchmark/benchmark.h>

using namespace logimap;

namespace {

NetworkConfig network_of(std::size_t n) {
  NetworkSpec spec;
  spec.n_systems = n;
  spec.pos_per_system = n / 10;
  spec.neg_per_system = 2 * n / 5;
  spec.rng_seed = 1;
  return build_network(spec);
}

void BM_BinaryIterations(benchmark::State& state) {
  const auto c = BinaryConfig::nn(0.9998, 0.999, 0.001, 0.9);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(advance(c, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BinaryIterations)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_NetworkStep(benchmark::State& state) {
  const auto net = network_of(static_cast<std::size_t>(state.range(0)));
  std::vector<double> v(net.seeds().begin(), net.seeds().end());
  std::vector<double> next(v.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      step_network(net, v, next);
    } else {
      step_network_serial(net, v, next);
    }
    v.swap(next);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(net.edge_count()));
}
BENCHMARK_TEMPLATE(BM_NetworkStep, false)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_NetworkStep, true)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

template <bool Parallel>
void BM_Stability(benchmark::State& state) {
  const auto net = network_of(1000);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(run_stability(net, {}, 1000));
    } else {
      benchmark::DoNotOptimize(run_stability_serial(net, {}, 1000));
    }
  }
}
BENCHMARK_TEMPLATE(BM_Stability, false)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Stability, true)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  NetworkSpec spec;
  spec.n_systems = 200;
  spec.pos_per_system = 20;
  spec.neg_per_system = 80;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_stability({spec}, {}, 1000, 16));
  }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
