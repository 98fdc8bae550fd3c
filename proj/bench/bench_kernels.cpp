#include <benchmark/benchmark.h>

#include "wpg/beltrami.hpp"
#include "wpg/grassmann.hpp"

using namespace wpg;

namespace {

BeltramiCoefficient sample_mu(int N) {
  PsiCoefficients p(N);
  p.set(2, 0.25);
  p.set(3, cd(0.0, 0.15));
  p.set(6, -0.05);
  return mu_from_psi(p, make_grid(64, 2 * N + 8));
}

void BM_basis(benchmark::State& st) {
  const BeltramiCoefficient mu = sample_mu(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(basis(mu, static_cast<int>(st.range(0)), 1e-8));
}

void BM_basis_serial(benchmark::State& st) {
  const BeltramiCoefficient mu = sample_mu(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(basis_serial(mu, static_cast<int>(st.range(0)), 1e-8));
}

void BM_curvature_sweep(benchmark::State& st) {
  const std::vector<int> ranks = {1, 2, 4, 8, 16};
  for (auto _ : st) benchmark::DoNotOptimize(curvature_sweep(ranks, static_cast<int>(st.range(0)), 7, 16));
}

void BM_curvature_sweep_serial(benchmark::State& st) {
  const std::vector<int> ranks = {1, 2, 4, 8, 16};
  for (auto _ : st) benchmark::DoNotOptimize(curvature_sweep_serial(ranks, static_cast<int>(st.range(0)), 7, 16));
}

}  // namespace

BENCHMARK(BM_basis)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_basis_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curvature_sweep)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curvature_sweep_serial)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
