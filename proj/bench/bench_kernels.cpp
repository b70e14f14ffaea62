// Serial reference loops against the OpenMP kernels on the same work.
#include <benchmark/benchmark.h>

#include "fpt/bipoisson.hpp"
#include "fpt/montecarlo.hpp"
#include "fpt/parallel.hpp"
#include "fpt/singlefile.hpp"

namespace {

fpt::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? fpt::Execution::serial : fpt::Execution::parallel;
}

void BM_BiPoissonGrid(benchmark::State& state) {
  const fpt::BiPoissonParams p{1.0, 2.0, 0.8, 5};
  const auto grid = fpt::TimeGrid::uniform(0.05, 4.0, 0.05);
  for (auto _ : state) {
    auto v = fpt::map_points(mode(state), grid.points(),
                             [&](double t) { return fpt::survival_last(p, t); });
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_BiPoissonGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TrivariateMc(benchmark::State& state) {
  const fpt::TriPoissonParams p{{1.2, 0.5, 3.3}, {1.4, 3.1, 0.12}};
  fpt::McConfig cfg;
  cfg.n_realizations = 20'000;
  cfg.horizon = 3.0;
  cfg.grid = fpt::TimeGrid::uniform(0.0, 3.0, 0.25);
  cfg.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(fpt::simulate_trivariate(p, cfg));
}
BENCHMARK(BM_TrivariateMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SingleFileMc(benchmark::State& state) {
  fpt::McConfig cfg;
  cfg.n_realizations = 2'000;
  cfg.horizon = 1.0;
  cfg.dt = 1e-4;
  cfg.grid = fpt::TimeGrid::uniform(0.0, 1.0, 0.1);
  cfg.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(fpt::simulate_singlefile(cfg));
}
BENCHMARK(BM_SingleFileMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Folded parallel kernel against the literal quadruple sum, K = 8.
void BM_SingleFileLastExit(benchmark::State& state) {
  fpt::SpectralParams sp;
  sp.K = 8;
  const double t = 0.2;
  for (auto _ : state) {
    const double v = state.range(0) == 0 ? fpt::survival_last_sf_reference(sp, t)
                                         : fpt::survival_last_sf(sp, t);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_SingleFileLastExit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
