// All-pairs A* distance precompute: serial reference against the OpenMP kernel.
// Trap sets are drawn with the minimum separation used by the compiler.

#include "atomroute/motion.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace atomroute;

namespace {

constexpr double kDMin = 0.02;

PointList scatter(int n) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> u(0.02, 0.98);
  PointList p;
  while (static_cast<int>(p.size()) < n) {
    const Point c{u(rng), u(rng)};
    bool ok = true;
    for (const auto& q : p) {
      ok = ok && distance(c, q) >= 1.5 * kDMin;
    }
    if (ok) {
      p.push_back(c);
    }
  }
  return p;
}

void serial(benchmark::State& state) {
  const MotionGrid grid(scatter(static_cast<int>(state.range(0))), kDMin, kDMin / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(precomputeDistancesSerial(grid));
  }
  state.counters["pairs"] = static_cast<double>(grid.trapCount() * (grid.trapCount() - 1) / 2);
}

void parallel(benchmark::State& state) {
  const MotionGrid grid(scatter(static_cast<int>(state.range(0))), kDMin, kDMin / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(precomputeDistances(grid));
  }
  state.counters["pairs"] = static_cast<double>(grid.trapCount() * (grid.trapCount() - 1) / 2);
}

} // namespace

BENCHMARK(serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
