#include <benchmark/benchmark.h>

#include "radial_jet/identities.hpp"
#include "radial_jet/spaces.hpp"

using namespace radial_jet;

static void BM_ExactMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int cap = static_cast<int>(state.range(1));
  const auto f = random_jet<Rational>(n, cap, 1, ConstantTerm::free);
  const auto g = random_jet<Rational>(n, cap, 2, ConstantTerm::free);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
  state.counters["terms"] = static_cast<double>(f.size());
}
BENCHMARK(BM_ExactMul)->Args({1, 12})->Args({2, 6})->Args({3, 6})->Args({3, 10});

static void BM_FloatMul(benchmark::State& state) {
  const auto f = random_jet<Complex>(3, static_cast<int>(state.range(0)), 1, ConstantTerm::free);
  const auto g = random_jet<Complex>(3, static_cast<int>(state.range(0)), 2, ConstantTerm::free);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_FloatMul)->Arg(6)->Arg(10);

static void BM_ExactRealPow(benchmark::State& state) {
  const auto f = random_jet<Rational>(2, static_cast<int>(state.range(0)), 3, ConstantTerm::unit);
  for (auto _ : state) benchmark::DoNotOptimize(real_pow(f, Rational(5, 3)));
}
BENCHMARK(BM_ExactRealPow)->Arg(4)->Arg(6)->Arg(8);

static void BM_PowerIdentityTrial(benchmark::State& state) {
  TrialSpec spec;
  spec.n = 3;
  spec.m = static_cast<int>(state.range(0));
  spec.D = 6;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(spec, seed++));
}
BENCHMARK(BM_PowerIdentityTrial)->Arg(1)->Arg(4);

static void BM_FdbTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fdb_table(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FdbTable)->Arg(8)->Arg(12);

static void BM_CompressionNorm(benchmark::State& state) {
  const auto f = FloatJet::constant(2, 2, Complex(2.0, 0.0)) + FloatJet::variable(2, 2, 0) * FloatJet::variable(2, 2, 1);
  const SpaceParams space = BesovDirichlet{2, 1, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(compression_multiplier_norm(f, space, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompressionNorm)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
