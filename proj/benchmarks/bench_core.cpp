#include <benchmark/benchmark.h>

#include <vector>

#include "banach/functions.hpp"
#include "banach/interp.hpp"
#include "banach/montecarlo.hpp"
#include "banach/rademacher.hpp"

using namespace banach;

static void BM_BuildInterp(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_interp(2, k, 2));
}
BENCHMARK(BM_BuildInterp)->Arg(8)->Arg(32)->Arg(128);

static void BM_ApplyInterp(benchmark::State& state) {
  const auto f = registry_problem("trig", 2, SpaceDescriptor::parse("lq:2:4"));
  const auto op = build_interp(static_cast<int>(state.range(0)), 16, 2);
  const auto samples = sample_nodes(op, f);
  std::vector<double> t{0.3141, 0.2718};
  for (auto _ : state) benchmark::DoNotOptimize(apply_interp(op, samples, t));
}
BENCHMARK(BM_ApplyInterp)->Arg(1)->Arg(3);

static void BM_StandardMC(benchmark::State& state) {
  const auto f = registry_problem("expsum:seed=1", 2, SpaceDescriptor::parse("lq:2:8"));
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(standard_mc(f, n, ++seed));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_StandardMC)->Arg(1 << 10)->Arg(1 << 14);

static void BM_SeparatedMC(benchmark::State& state) {
  const auto f = registry_problem("expsum:seed=1", 2, SpaceDescriptor::parse("lq:2:8"));
  const auto n = static_cast<std::size_t>(state.range(0));
  const SeparatedMonteCarlo est(f, n, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(est.estimate(++seed));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SeparatedMC)->Arg(1 << 10)->Arg(1 << 14);

static void BM_ExactRademacher(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto X = SpaceDescriptor::parse("lq:1.5:8");
  const auto fam = random_unit_family(X, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rademacher_moment(X, fam.vectors, 2.0));
}
BENCHMARK(BM_ExactRademacher)->Arg(10)->Arg(16)->Arg(20);
BENCHMARK_MAIN();
