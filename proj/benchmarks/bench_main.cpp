#include "irsvm/irsvm.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

irsvm::Matrix gaussian(irsvm::Index m, irsvm::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  irsvm::Matrix A(m, n);
  for (irsvm::Index j = 0; j < n; ++j)
    for (irsvm::Index i = 0; i < m; ++i) A(i, j) = g(rng);
  return A;
}

void BM_ThinSvd(benchmark::State& state) {
  const auto n = static_cast<irsvm::Index>(state.range(0));
  const irsvm::Matrix A = gaussian(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(irsvm::thin_svd(A));
}
BENCHMARK(BM_ThinSvd)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_WeightedSvProx(benchmark::State& state) {
  const auto n = static_cast<irsvm::Index>(state.range(0));
  const irsvm::Matrix B = gaussian(n, n, 2);
  const irsvm::Matrix C = gaussian(n, n, 3);
  const irsvm::Vector s = irsvm::Vector::LinSpaced(n, 0.1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(irsvm::weighted_sv_prox(B, C, 1.0, s));
}
BENCHMARK(BM_WeightedSvProx)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Recovery(benchmark::State& state) {
  const auto variant = static_cast<irsvm::Variant>(state.range(0));
  const auto inst = irsvm::harness::gen_instance({60, 60, 3, 0.5, 4});
  const irsvm::SolverConfig cfg;
  double err = 0.0;
  for (auto _ : state) {
    const auto report = irsvm::harness::run_method(inst.problem, inst.ground_truth, variant, cfg,
                                                   irsvm::harness::ContinuationSettings{});
    err = report.rel_err;
  }
  state.counters["rel_err"] = err;
}
BENCHMARK(BM_Recovery)
    ->Arg(static_cast<int>(irsvm::Variant::IRSVM1))
    ->Arg(static_cast<int>(irsvm::Variant::IRSVM2))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
