// Serial reference kernel against the OpenMP kernel on dense nested series.
#include <benchmark/benchmark.h>

#include <random>

#include "rswan/series.hpp"

namespace {

rswan::Series dense(const rswan::RingPtr& ring, int inner, int outer, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& R = ring->scalars();
  std::vector<rswan::Term> terms;
  for (int j = -outer / 4; j < outer; ++j)
    for (int i = -2; i < inner; ++i)
      terms.push_back({{i, j}, R.decode(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(R.residue_size())))});
  return rswan::Series::from_terms(ring, 2, terms);
}

rswan::RingPtr ring() {
  rswan::FieldTower t;
  t.p = 3;
  t.k = 2;
  t.variables = {"u", "t"};
  t.precision = 256;
  return rswan::Ring::field(t);
}

void BM_Serial(benchmark::State& state) {
  const auto r = ring();
  const auto a = dense(r, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1);
  const auto b = dense(r, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rswan::multiply_serial(a, b));
}

void BM_Parallel(benchmark::State& state) {
  const auto r = ring();
  const auto a = dense(r, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1);
  const auto b = dense(r, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rswan::multiply_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
