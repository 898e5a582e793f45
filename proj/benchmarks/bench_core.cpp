#include <benchmark/benchmark.h>

#include "ere/curves.hpp"
#include "ere/hill.hpp"
#include "ere/index.hpp"
#include "ere/smallmass.hpp"
#include "ere/systems.hpp"

using namespace ere;

static void IntegrateMonodromy(benchmark::State& state) {
  const double e = state.range(0) / 100.0;
  const EssentialSystem s = EssentialSystem::nonconvex_tilde(1.0, e);
  for (auto _ : state) {
    auto m = integrate_monodromy(s);
    benchmark::DoNotOptimize(m.gamma2pi.m);
  }
}
BENCHMARK(IntegrateMonodromy)->Arg(0)->Arg(30)->Arg(60)->Arg(90)->Unit(benchmark::kMillisecond);

static void ClassifyNormalForm(benchmark::State& state) {
  const Mat4 m = integrate_monodromy(EssentialSystem::convex(0.1, 0.3)).gamma2pi.m;
  for (auto _ : state) benchmark::DoNotOptimize(classify_normal_form(m));
}
BENCHMARK(ClassifyNormalForm);

static void HillIndex(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const EssentialSystem s = EssentialSystem::convex(0.2, 0.3);
  MorseOptions mo{N, false, 1e-9};
  for (auto _ : state) benchmark::DoNotOptimize(morse_index(s.lambda3, s.lambda4, s.e, -1.0, mo));
  state.SetComplexityN(N);
}
BENCHMARK(HillIndex)->RangeMultiplier(2)->Range(16, 128)->Complexity()->Unit(benchmark::kMillisecond);

static void ParityDeterminant(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parity_det_sign(6.0, -1.0, 0.6, -1, 1, N));
  state.SetComplexityN(N);
}
BENCHMARK(ParityDeterminant)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void FindDegenerateSlice(benchmark::State& state) {
  FindOptions fo;
  fo.certify = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_degenerate(Case::nonconvex, -1, 0.3, -1.0, 3.0, fo));
}
BENCHMARK(FindDegenerateSlice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void NewtonCC(benchmark::State& state) {
  const SmallMassFamily fam{0.5, 1.0, 1e-5, Branch::convex};
  for (auto _ : state) benchmark::DoNotOptimize(solve_cc_newton(fam));
}
BENCHMARK(NewtonCC)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
