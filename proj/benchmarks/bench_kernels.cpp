#include <benchmark/benchmark.h>

#include "qtrio/qseries.hpp"
#include "qtrio/trio.hpp"
#include "qtrio/wilson.hpp"

namespace {

using qtrio::ParameterSet;
using qtrio::PochhammerCache;
using qtrio::Rational;

ParameterSet make_params(int n) {
  return ParameterSet(Rational(3, 5), Rational(1, 3), Rational(1, 7), Rational(2),
                      Rational(1, 2), n);
}

void BM_pochhammer_scratch(benchmark::State& state) {
  Rational a(2, 7), q(3, 5);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Rational acc(0);
    for (int j = 0; j <= k; ++j) acc += qtrio::q_pochhammer(a, q, j);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_pochhammer_scratch)->Arg(16)->Arg(48);

void BM_pochhammer_cached(benchmark::State& state) {
  Rational a(2, 7), q(3, 5);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PochhammerCache<Rational> cache;
    Rational acc(0);
    for (int j = 0; j <= k; ++j) acc += cache.get(a, q, j);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_pochhammer_cached)->Arg(16)->Arg(48);

void BM_wilson_eval_grid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ParameterSet ps = make_params(n);
  auto wp = qtrio::wilson_from_trio(ps);
  for (auto _ : state) {
    Rational acc(0);
    for (int i = 0; i <= ps.N; ++i)
      for (int x = 0; x <= ps.N; ++x) acc += qtrio::wilson_eval(wp, i, x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_wilson_eval_grid)->Arg(3)->Arg(5);

void BM_build_realization(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ParameterSet ps = make_params(n);
  for (auto _ : state) {
    auto tr = qtrio::build_realization(ps);
    benchmark::DoNotOptimize(tr.P_v(0, 0));
  }
}
BENCHMARK(BM_build_realization)->Arg(3)->Arg(5);

void BM_heun_residuals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ParameterSet ps = make_params(n);
  auto tr = qtrio::build_realization(ps);
  auto hc = qtrio::HeunConstants::from(ps);
  for (auto _ : state) {
    auto rep = qtrio::verify_heun_relations(tr, hc);
    benchmark::DoNotOptimize(rep.size());
  }
}
BENCHMARK(BM_heun_residuals)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
