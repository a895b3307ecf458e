#include <benchmark/benchmark.h>

#include <selfsim/boxoracle.hpp>
#include <selfsim/entropy.hpp>
#include <selfsim/ggdc.hpp>
#include <selfsim/kernel.hpp>
#include <selfsim/saturate.hpp>
#include <selfsim/spectral.hpp>

using namespace selfsim;

namespace {

SetAutomaton builtin_automaton(const std::string& name) {
  GeometricSet s = builtin_set(name);
  return SetAutomaton::single_state(s.k, s.d, s.branches);
}

KernelPresentation kernel_of(const std::string& name) {
  return compute_kernel(saturate(builtin_automaton(name)));
}

void BM_SaturateCarpet(benchmark::State& state) {
  SetAutomaton raw = builtin_automaton("sierpinski-carpet");
  for (auto _ : state) benchmark::DoNotOptimize(saturate(raw));
}
BENCHMARK(BM_SaturateCarpet);

void BM_KernelCantor(benchmark::State& state) {
  SaturatedAutomaton sat = saturate(builtin_automaton("cantor"));
  for (auto _ : state) benchmark::DoNotOptimize(compute_kernel(sat));
}
BENCHMARK(BM_KernelCantor);

void BM_KernelCarpet(benchmark::State& state) {
  SaturatedAutomaton sat = saturate(builtin_automaton("sierpinski-carpet"));
  for (auto _ : state) benchmark::DoNotOptimize(compute_kernel(sat));
}
BENCHMARK(BM_KernelCarpet);

void BM_SpectralRadius(benchmark::State& state) {
  KernelPresentation kp = kernel_of("vicsek");
  Rat tol = parse_rational("1e-12");
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(kp.matrix, tol));
}
BENCHMARK(BM_SpectralRadius);

void BM_WordCounts(benchmark::State& state) {
  KernelPresentation kp = kernel_of("cantor");
  CountingAutomaton ca = counting_automaton(kp);
  int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(word_count(ca, depth));
}
BENCHMARK(BM_WordCounts)->Arg(10)->Arg(60)->Arg(200);

void BM_BoxOracleCarpet(benchmark::State& state) {
  int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BoxOracle oracle(builtin_set("sierpinski-carpet"));  // fresh memo each run
    benchmark::DoNotOptimize(oracle.count_boxes(depth));
  }
}
BENCHMARK(BM_BoxOracleCarpet)->Arg(2)->Arg(4);

void BM_GgdcBuild(benchmark::State& state) {
  KernelPresentation kp = kernel_of("sierpinski-carpet");
  for (auto _ : state) benchmark::DoNotOptimize(build_ggdc(kp));
}
BENCHMARK(BM_GgdcBuild);

}  // namespace

BENCHMARK_MAIN();
