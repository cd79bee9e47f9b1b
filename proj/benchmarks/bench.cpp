#include <benchmark/benchmark.h>

#include "prymcheck/prym.hpp"
#include "prymcheck/runner.hpp"

using namespace prymcheck;

namespace {

MonodromyDatum basic(std::int64_t n) { return {n, 2, {0, 0, 0, 0, 1, 1}}; }

void BM_HomologyLattice(benchmark::State& state) {
  const auto d = basic(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(homology_lattice(d));
  state.SetLabel("rank " + std::to_string(2 * (state.range(0) + 1)));
}
BENCHMARK(BM_HomologyLattice)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_AdditionDegree(benchmark::State& state) {
  const auto lat = homology_lattice(basic(state.range(0)));
  const auto a = tower::quotient_jacobian(lat, SubgroupSpec::reflection(0));
  const auto b = tower::quotient_jacobian(lat, SubgroupSpec::reflection(1));
  const auto p = tower::prym(lat);
  for (auto _ : state) benchmark::DoNotOptimize(addition_degree({{&a, {}}, {&b, {}}}, p));
}
BENCHMARK(BM_AdditionDegree)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_AllClaims(benchmark::State& state) {
  const auto d = basic(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_datum(d, all_claims()));
}
BENCHMARK(BM_AllClaims)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  RunConfig c;
  c.mode = Mode::sweep;
  c.n = 8;
  c.samples = 8;
  c.seed = 42;
  c.claims = {ClaimId::thm41, ClaimId::prop32};
  c.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
