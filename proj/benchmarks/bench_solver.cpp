#include <benchmark/benchmark.h>

#include "gfcpd/instances.hpp"
#include "gfcpd/solver.hpp"

using namespace gfcpd;

namespace {

// full scans: tensors with mode ranks (r,r,r) and no rank-r decomposition,
// so both strategies walk their entire search spaces
Tensor3 hard_instance(const Field& f, int side, std::uint64_t seed) {
  auto [t, w] = random_instance(f, side, side, side, 3 * side, seed);
  return t;
}

std::uint64_t hard_seed(int q, int r) {
  if (q == 2 && r == 3) return 5;
  if (q == 2 && r == 4) return 1;
  return 1;  // q = 3, r = 2
}

void bm_solve_strategy(benchmark::State& state, Strategy strat, int q, int r) {
  auto f = Field::make(q, 1);
  Tensor3 t = hard_instance(f, r, hard_seed(q, r));
  SolveOptions opt;
  opt.strategy = strat;
  std::uint64_t candidates = 0;
  for (auto _ : state) {
    auto rep = solve(f, t, r, opt);
    candidates += rep.stats.a_candidates;
    benchmark::DoNotOptimize(rep);
  }
  state.counters["candidates"] =
      benchmark::Counter(double(candidates) / double(state.iterations()));
}

void bm_fix_one_gf2_r3(benchmark::State& state) {
  bm_solve_strategy(state, Strategy::fix_one, 2, 3);
}
void bm_fix_two_gf2_r3(benchmark::State& state) {
  bm_solve_strategy(state, Strategy::fix_two, 2, 3);
}
void bm_fix_one_gf3_r2(benchmark::State& state) {
  bm_solve_strategy(state, Strategy::fix_one, 3, 2);
}
void bm_fix_two_gf3_r2(benchmark::State& state) {
  bm_solve_strategy(state, Strategy::fix_two, 3, 2);
}
BENCHMARK(bm_fix_one_gf2_r3);
BENCHMARK(bm_fix_two_gf2_r3);
BENCHMARK(bm_fix_one_gf3_r2);
BENCHMARK(bm_fix_two_gf3_r2);

void bm_fix_one_gf2_r4(benchmark::State& state) {
  bm_solve_strategy(state, Strategy::fix_one, 2, 4);
}
BENCHMARK(bm_fix_one_gf2_r4)->Unit(benchmark::kMillisecond);

void bm_compress(benchmark::State& state) {
  auto f = Field::make(2, 1);
  const int n = int(state.range(0));
  auto [small, w] = random_instance(f, 4, 4, 4, 8, 1);
  Tensor3 t(n, n, n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) t.at(i, j, k) = small.at(i, j, k);
  for (auto _ : state) {
    auto comp = compress(f, t, 4);
    benchmark::DoNotOptimize(comp);
  }
}
BENCHMARK(bm_compress)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
