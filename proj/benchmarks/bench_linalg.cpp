#include <benchmark/benchmark.h>

#include <random>

#include "gfcpd/linalg.hpp"

using namespace gfcpd;

namespace {

Matrix random_matrix(const Field& f, int m, int n, std::mt19937_64& rng) {
  Matrix x(m, n);
  for (auto& v : x.a) v = felt(rng() % f.q());
  return x;
}

void bm_field_mul(benchmark::State& state) {
  auto f = state.range(0) == 2 ? Field::make(2, 1)
           : state.range(0) == 256 ? Field::make(2, 8)
                                   : Field::make(65521, 1);
  std::mt19937_64 rng(1);
  std::vector<felt> xs(4096);
  for (auto& x : xs) x = felt(rng() % f.q());
  for (auto _ : state) {
    felt acc = 1;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      acc = f.add(acc, f.mul(xs[i], xs[i + 1]));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (xs.size() - 1));
}
BENCHMARK(bm_field_mul)->Arg(2)->Arg(256)->Arg(65521);

// the GF(2) input takes the bit-packed kernel; GF(3) the table-driven one
void bm_rref(benchmark::State& state) {
  const int q = int(state.range(0)), n = int(state.range(1));
  auto f = Field::make(q, 1);
  std::mt19937_64 rng(2);
  Matrix m = random_matrix(f, n, n, rng);
  for (auto _ : state) {
    auto cert = rref_with_certificate(f, m, n);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(bm_rref)->Args({2, 8})->Args({2, 64})->Args({2, 128})->Args({3, 8})->Args({3, 64});

void bm_rref_early_exit(benchmark::State& state) {
  auto f = Field::make(2, 1);
  std::mt19937_64 rng(3);
  Matrix m = random_matrix(f, 128, 128, rng);
  for (auto _ : state) {
    auto cert = rref_with_certificate(f, m, int(state.range(0)));
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(bm_rref_early_exit)->Arg(0)->Arg(4)->Arg(128);

void bm_greedy_monomial(benchmark::State& state) {
  const int q = int(state.range(0));
  auto f = Field::make(q, 1);
  std::mt19937_64 rng(4);
  const int m = 4, n = 4;
  Matrix w(m, n);
  for (int j = 0; j < n; ++j) {
    bool nz = false;
    while (!nz)
      for (int i = 0; i < m; ++i) {
        w.at(i, j) = felt(rng() % q);
        nz = nz || w.at(i, j);
      }
  }
  for (auto _ : state) {
    auto g = greedy_monomial(f, w);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(bm_greedy_monomial)->Arg(2)->Arg(3);

void bm_fullrank_summands(benchmark::State& state) {
  auto f = Field::make(2, 1);
  Matrix m = Matrix::identity(int(state.range(0)));
  for (auto _ : state) {
    FullrankSummandStream s(f, m);
    felt acc = 0;
    for (std::uint64_t i = 0; i < s.size(); ++i) acc ^= s.at(i).a[0];
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_fullrank_summands)->Arg(3)->Arg(4);

}  // namespace
