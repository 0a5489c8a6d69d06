#include <benchmark/benchmark.h>

#include "ambrose/homogeneity.hpp"
#include "ambrose/runner.hpp"

namespace {

using namespace ambrose;

void run_lh(benchmark::State& state, Exec exec) {
  const Fixture f = instantiate("hopf_monopole");
  const std::vector<Vec> pts =
      sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), static_cast<int>(state.range(0)), 42);
  const TripleSpec spec{f.chart, f.g, f.levi_civita, f.algebra, f.inner, f.a0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_lh_triple(spec, f.canonical, f.a, pts, {1e-5, exec}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void run_identities(benchmark::State& state, Exec exec) {
  const Fixture f = instantiate("su2_canonical");
  const std::vector<Vec> pts =
      sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(identity_report(f, pts, 1e-6, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LhTripleSerial(benchmark::State& s) { run_lh(s, Exec::Serial); }
void BM_LhTripleParallel(benchmark::State& s) { run_lh(s, Exec::Parallel); }
void BM_IdentitiesSerial(benchmark::State& s) { run_identities(s, Exec::Serial); }
void BM_IdentitiesParallel(benchmark::State& s) { run_identities(s, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_LhTripleSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LhTripleParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentitiesSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentitiesParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
