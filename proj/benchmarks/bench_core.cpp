#include <benchmark/benchmark.h>

#include <numbers>

#include "euler2d/drift.hpp"
#include "euler2d/gibbs.hpp"
#include "euler2d/integrator.hpp"
#include "euler2d/stats.hpp"

using namespace euler2d;

namespace {

SpectralField gibbs_field(int n) {
  return sample({1.0, 2.0 * std::numbers::pi, {n, n}}, RngStream{1, 0});
}

void BM_DriftTriad(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = gibbs_field(n);
  const DriftOperator op(f.period(), f.cutoff());
  SpectralField out(f.period(), op.layout_ptr());
  for (auto _ : state) {
    op.apply(f, out);
    benchmark::DoNotOptimize(out.coeffs().data());
  }
  state.counters["terms"] = static_cast<double>(op.term_count());
}
BENCHMARK(BM_DriftTriad)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_DriftPseudospectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = gibbs_field(n);
  for (auto _ : state) benchmark::DoNotOptimize(drift_pseudospectral(f, 4 * n));
}
BENCHMARK(BM_DriftPseudospectral)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_Rk4Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = gibbs_field(n);
  const GalerkinFlow flow(f.period(), f.cutoff());
  IntegratorConfig cfg;
  for (auto _ : state) flow.step(f, 1e-3, cfg);
}
BENCHMARK(BM_Rk4Step)->Arg(6)->Arg(8);

void BM_MidpointStep(benchmark::State& state) {
  auto f = gibbs_field(8);
  const GalerkinFlow flow(f.period(), f.cutoff());
  IntegratorConfig cfg;
  cfg.scheme = Scheme::implicit_midpoint;
  for (auto _ : state) flow.step(f, 1e-2, cfg);
}
BENCHMARK(BM_MidpointStep);

void BM_GibbsSample(benchmark::State& state) {
  const GibbsParams p{1.0, 2.0 * std::numbers::pi, {static_cast<int>(state.range(0)),
                                                     static_cast<int>(state.range(0))}};
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(p, RngStream{7, i++}));
}
BENCHMARK(BM_GibbsSample)->Arg(6)->Arg(16);

void BM_KsTwoSample(benchmark::State& state) {
  std::vector<double> a, b;
  const GibbsParams p{1.0, 2.0 * std::numbers::pi, {1, 1}};
  for (std::uint64_t i = 0; i < 4000; ++i) {
    a.push_back(sample(p, RngStream{1, i})[0].real());
    b.push_back(sample(p, RngStream{2, i})[0].real());
  }
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(a, b));
}
BENCHMARK(BM_KsTwoSample);

}  // namespace

BENCHMARK_MAIN();
