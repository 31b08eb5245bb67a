#include <benchmark/benchmark.h>

#include "subzeta/expsum.hpp"
#include "subzeta/poincare.hpp"
#include "subzeta/regularize.hpp"
#include "subzeta/variety.hpp"
#include "subzeta/zeta.hpp"

using namespace subzeta;

namespace {

PolySystem three_var() { return PolySystem::parse(3, 3, {"x1 - x2*x3"}, "x2^2 + x3^3"); }

void BM_HenselEnumerate(benchmark::State& state) {
  PolySystem s = three_var();
  const unsigned m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hensel_enumerate(s, m, 2u));
  state.SetLabel("m=" + std::to_string(m));
}
BENCHMARK(BM_HenselEnumerate)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  PolySystem s = three_var();
  const unsigned m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_points(s, m, 30'000'000));
}
BENCHMARK(BM_BruteForce)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ShellMasses(benchmark::State& state) {
  PolySystem s = three_var();
  Atlas a = build_atlas(s);
  const unsigned depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shell_masses(s, a, Support::unit_polydisc(), depth, 3));
}
BENCHMARK(BM_ShellMasses)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_ValueHistogram(benchmark::State& state) {
  PolySystem s = three_var();
  Atlas a = build_atlas(s);
  const unsigned m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(value_histogram(s, a, Support::unit_polydisc(), m));
}
BENCHMARK(BM_ValueHistogram)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SpsVerifyLine(benchmark::State& state) {
  PolySystem s = PolySystem::parse(3, 2, {"x1"}, "x2^3");
  Atlas a = build_atlas(s);
  for (auto _ : state) {
    ZetaTables t = compute_zeta_tables(s, a, Support::unit_polydisc(), 8, 3);
    RationalFn Z = trivial_zeta(t.trivial);
    benchmark::DoNotOptimize(sps_verify(s, a, Support::unit_polydisc(), t, Z, 1, 6));
  }
}
BENCHMARK(BM_SpsVerifyLine)->Unit(benchmark::kMillisecond);

void BM_GlobalDecompose(benchmark::State& state) {
  PolySystem s = PolySystem::parse(3, 2, {"3*x1 - 9*x2"}, "x2^2");
  for (auto _ : state) benchmark::DoNotOptimize(global_decompose(s));
}
BENCHMARK(BM_GlobalDecompose)->Unit(benchmark::kMicrosecond);

void BM_DeltaIntegral(benchmark::State& state) {
  PolySystem s = PolySystem::parse(3, 2, {"x1 - x2^2"}, "x2");
  const unsigned M = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_r_integral(s, Support::unit_polydisc(), 1, trivial_character(3, 0), 2, M));
  }
}
BENCHMARK(BM_DeltaIntegral)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_Reconstruction(benchmark::State& state) {
  PolySystem s = PolySystem::parse(3, 2, {"x1"}, "x2^4");
  CountSeries c = count_series(s, build_atlas(s), 14);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_rational(c.scaled));
}
BENCHMARK(BM_Reconstruction)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
