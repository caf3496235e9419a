// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "emlattice/euler_maclaurin.hpp"
#include "emlattice/parallel.hpp"
#include "emlattice/series.hpp"

using namespace emlattice;

namespace {

TruncSeries dense_series(int nvars, int order, long seed) {
  TruncSeries s(nvars, order);
  for (std::size_t i = 0; i < s.size(); ++i)
    s.at(i) = Rational(static_cast<long>((i * 7919 + seed) % 97) - 48, static_cast<long>(i % 13) + 1);
  return s;
}

Polytope dilated_triangle(long t) {
  std::vector<QVector> tri{{Rational(1, 3), Rational(1, 5)}, {Rational(16, 3), Rational(1, 7)},
                           {Rational(37, 5), Rational(92, 7)}};
  return dilate(build_polytope(RationalSpace::standard(2), tri), t);
}

void BM_MultiplySerial(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  TruncSeries a = dense_series(3, order, 1), b = dense_series(3, order, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, b, order));
}

void BM_MultiplyParallel(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  TruncSeries a = dense_series(3, order, 1), b = dense_series(3, order, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply_parallel(a, b, order));
}

void BM_BruteForceSerial(benchmark::State& state) {
  Polytope p = dilated_triangle(state.range(0));
  Polynomial h = Polynomial::monomial(2, {3, 2});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_sum(p, h));
}

void BM_BruteForceParallel(benchmark::State& state) {
  Polytope p = dilated_triangle(state.range(0));
  Polynomial h = Polynomial::monomial(2, {3, 2});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_sum_parallel(p, h));
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->Arg(8)->Arg(12);
BENCHMARK(BM_MultiplyParallel)->Arg(8)->Arg(12);
BENCHMARK(BM_BruteForceSerial)->Arg(10)->Arg(40);
BENCHMARK(BM_BruteForceParallel)->Arg(10)->Arg(40);

BENCHMARK_MAIN();
