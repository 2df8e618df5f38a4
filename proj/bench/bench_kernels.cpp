// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "magprop/eigensolver.hpp"
#include "magprop/grid.hpp"
#include "magprop/oracle.hpp"
#include "magprop/propagator.hpp"

using namespace magprop;

namespace {

const PhysParams kParams = PhysParams::natural(1.0);

WaveFunction packet(int n) {
  return sample(GridSpec{8.0, n}, [](const Vec2& x) { return gaussian_packet(x, {0.3, -0.2}, 1.0, {0.5, 0.0}); });
}

void BM_KernelApplySerial(benchmark::State& state) {
  const WaveFunction psi = packet(int(state.range(0)));
  const TransverseKernel K(System::landau, kParams, GaugeField::symmetric(1.0), damped_time(1.0, 1e-3));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_apply_serial(K, psi, psi.grid));
}

void BM_KernelApplyParallel(benchmark::State& state) {
  const WaveFunction psi = packet(int(state.range(0)));
  const TransverseKernel K(System::landau, kParams, GaugeField::symmetric(1.0), damped_time(1.0, 1e-3));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_apply(K, psi, psi.grid));
}

struct SpmvSetup {
  SparseOperator H;
  std::vector<cplx> x, y;
  explicit SpmvSetup(int n) : H(build_hamiltonian_grid(kParams, GaugeField::symmetric(1.0), GridSpec{12.0, n})) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    x.resize(H.dim());
    y.resize(H.dim());
    for (auto& v : x) v = cplx(u(rng), u(rng));
  }
};

void BM_SpmvSerial(benchmark::State& state) {
  SpmvSetup s(int(state.range(0)));
  for (auto _ : state) {
    s.H.apply_serial(s.x, s.y);
    benchmark::DoNotOptimize(s.y.data());
  }
}

void BM_SpmvParallel(benchmark::State& state) {
  SpmvSetup s(int(state.range(0)));
  for (auto _ : state) {
    s.H.apply(s.x, s.y);
    benchmark::DoNotOptimize(s.y.data());
  }
}

void BM_LowestEigenpairs(benchmark::State& state) {
  const SparseOperator H = build_hamiltonian_grid(PhysParams::natural(1.0, 1.0), GaugeField::symmetric(1.0), GridSpec{12.0, 96});
  EigenOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(H, 6, opts));
}

}  // namespace

BENCHMARK(BM_KernelApplySerial)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelApplyParallel)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpmvSerial)->Arg(96)->Arg(192)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpmvParallel)->Arg(96)->Arg(192)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LowestEigenpairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
