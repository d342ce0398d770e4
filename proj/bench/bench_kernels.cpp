// Serial reference vs OpenMP batch evaluation of the potential kernels.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rbvp/potential.hpp"

using namespace rbvp;

namespace {

const GridSource& source(double h) {
  static const GridSource coarse = GridSource::sample(
      [](cd z) { return std::exp(-20.0 * std::norm(z)); }, cd(-1.25, -1.25), cd(1.25, 1.25), 1.0 / 64);
  static const GridSource fine = GridSource::sample(
      [](cd z) { return std::exp(-20.0 * std::norm(z)); }, cd(-1.25, -1.25), cd(1.25, 1.25), 1.0 / 128);
  return h < 1.0 / 100 ? fine : coarse;
}

std::vector<cd> points(std::size_t n) {
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::polar(0.9 * k / n, 2.39996 * k);
  return out;
}

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_NewtonianPotential(benchmark::State& state) {
  const PotentialField f{source(1.0 / 64)};
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(newtonian_potential_batch(f, pts, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TOperator(benchmark::State& state) {
  const auto& g = source(1.0 / 64);
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_operator_batch(g, pts, KernelMode::cell_exact, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TOperatorFine(benchmark::State& state) {
  const auto& g = source(1.0 / 128);
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_operator_batch(g, pts, KernelMode::midpoint, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_NewtonianPotential)->ArgNames({"points", "parallel"})->ArgsProduct({{16, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TOperator)->ArgNames({"points", "parallel"})->ArgsProduct({{16, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TOperatorFine)->ArgNames({"points", "parallel"})->ArgsProduct({{64}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
