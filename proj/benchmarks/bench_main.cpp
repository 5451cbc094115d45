// Micro-benchmarks for the hot paths: ball enumeration, ring convolution,
// exact power enumeration, and the windowed numerical evolution.
//
// Run with --benchmark_filter=... to focus on one group; times are wall
// clock per iteration.

#include <benchmark/benchmark.h>

#include "cayley/complex.hpp"
#include "cayley/spectral.hpp"

using namespace cayley;

namespace {

RingElement degree0_entry(const GroupSpec& spec) {
  if (std::holds_alternative<FreeGroup>(spec.desc))
    return laplacian(free_group_complex(std::get<FreeGroup>(spec.desc).rank), 0)
        .at(0, 0);
  const auto& fp = std::get<FreeProduct>(spec.desc);
  return laplacian(free_product_complex(fp.orders[0], fp.orders[1], 1), 0).at(0, 0);
}

void BM_BallEnumeration(benchmark::State& state) {
  const GroupSpec spec = make_free_product({2, 3});
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto window = ball(spec, radius);
    benchmark::DoNotOptimize(window.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallEnumeration)->Arg(8)->Arg(12)->Arg(16);

void BM_Convolution(benchmark::State& state) {
  const GroupSpec spec = make_free_group(2);
  const RingElement delta0 = degree0_entry(spec);
  // Square a spread-out element: Delta_0^k has support ball(k).
  RingElement power = delta0;
  for (int i = 1; i < state.range(0); ++i) power = convolve(power, delta0);
  for (auto _ : state) {
    auto square = convolve(power, power);
    benchmark::DoNotOptimize(square.coeffs.size());
  }
}
BENCHMARK(BM_Convolution)->Arg(2)->Arg(4)->Arg(6);

void BM_ExactPowerSums(benchmark::State& state) {
  const GroupSpec spec = make_free_product({2, 3});
  const RingElement delta0 = degree0_entry(spec);
  const std::vector<GroupElement> classes = {identity(spec)};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sums = scalar_power_class_sums(delta0, order, classes);
    benchmark::DoNotOptimize(sums.sums.back()[0]);
  }
}
BENCHMARK(BM_ExactPowerSums)->Arg(12)->Arg(24)->Arg(36)->Unit(benchmark::kMillisecond);

void BM_CompressOperator(benchmark::State& state) {
  const CochainComplex c = free_product_complex(2, 3, 2);
  const RingMatrix delta1 = laplacian(c, 1);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto comp = compress(delta1, radius);
    benchmark::DoNotOptimize(comp.dim());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompressOperator)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_NumericHeat(benchmark::State& state) {
  const CochainComplex c = free_product_complex(2, 3, 2);
  const RingMatrix delta1 = laplacian(c, 1);
  const GroupElement e = identity(c.spec);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double v = heat_trace_numeric(delta1, 1.0, e, radius);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_NumericHeat)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
