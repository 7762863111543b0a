#include <benchmark/benchmark.h>

#include "condspec/analysis.hpp"
#include "condspec/environment.hpp"
#include "condspec/oracle.hpp"
#include "condspec/shooting.hpp"

namespace {

condspec::Environment bench_env(int n) {
  return condspec::make_iid(n, condspec::UniformDist{0.5, 1.5}, 42);
}

void BM_terminal_angle(benchmark::State& state) {
  const auto env = bench_env(static_cast<int>(state.range(0)));
  const double lambda = 9.8696 / (state.range(0) * double(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(condspec::terminal_angle(env, lambda));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_terminal_angle)->Range(1 << 8, 1 << 13)->Complexity();

void BM_solve_gap(benchmark::State& state) {
  const auto env = bench_env(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(condspec::solve_eigenvalue(env, 1));
  }
}
BENCHMARK(BM_solve_gap)->Range(1 << 8, 1 << 13);

void BM_full_spectrum(benchmark::State& state) {
  const auto env = bench_env(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(condspec::full_spectrum(env));
  }
}
BENCHMARK(BM_full_spectrum)->Range(1 << 4, 1 << 8);

void BM_oracle_spectrum(benchmark::State& state) {
  const auto env = bench_env(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(condspec::oracle_spectrum(env));
  }
}
BENCHMARK(BM_oracle_spectrum)->Range(1 << 4, 1 << 8);

void BM_b_trajectory(benchmark::State& state) {
  const auto env = bench_env(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(condspec::b_trajectory(env, 9.8696));
  }
}
BENCHMARK(BM_b_trajectory)->Range(1 << 10, 1 << 13);

}  // namespace

BENCHMARK_MAIN();
