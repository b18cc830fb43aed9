// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "lienard/abelian.hpp"
#include "lienard/bounds.hpp"
#include "lienard/constructor.hpp"
#include "lienard/verifier.hpp"

using namespace lienard;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_Profile(benchmark::State& state) {
  const Potential P = potential_of(Polynomial({0.0, -7.0, 0.0, 2.0}));
  const auto P_annuli = annuli(P);
  const auto& A = outer_annulus(P_annuli);
  const Polynomial F = odd_perturbation({1.0, -0.05, 4e-4});
  for (auto _ : state) benchmark::DoNotOptimize(profile(F, P, A, 1.0, 1e4, 256, mode(state)));
}

void BM_BoundsTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds_table(32, 32, mode(state)));
}

void BM_CountCycles(benchmark::State& state) {
  const ConstructedSystem vdp = van_der_pol_seed();
  for (auto _ : state) benchmark::DoNotOptimize(count_limit_cycles(vdp, 0.5, 3.0, 0.05, 32, mode(state)));
}

}  // namespace

BENCHMARK(BM_Profile)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsTable)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountCycles)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
