// Hot paths: the filter dominates every estimation, fuzzy clustering
// dominates the index scan, and the Rand index is the per-replication
// scoring step of the Monte Carlo harness.

#include <benchmark/benchmark.h>

#include "msfuzzy/agreement.hpp"
#include "msfuzzy/catalog.hpp"
#include "msfuzzy/filter.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/markov.hpp"

namespace {

using namespace msfuzzy;

void bm_hamilton_filter_iid(benchmark::State& state) {
  const auto& entry = dgp_by_label("MS3--1");
  const auto [y, path] = simulate_ms(entry.spec, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamilton_filter(y, entry.spec).loglik);
  }
}
BENCHMARK(bm_hamilton_filter_iid)->Arg(100)->Arg(1000);

void bm_hamilton_filter_ar(benchmark::State& state) {
  const auto& entry = dgp_by_label("MS3AR--1");
  const auto [y, path] = simulate_ms(entry.spec, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamilton_filter(y, entry.spec).loglik);
  }
}
BENCHMARK(bm_hamilton_filter_ar)->Arg(100)->Arg(1000);

void bm_kim_smoother(benchmark::State& state) {
  const auto& entry = dgp_by_label("MS3--1");
  const auto [y, path] = simulate_ms(entry.spec, static_cast<std::size_t>(state.range(0)), 7);
  const FilterOutput filtered = hamilton_filter(y, entry.spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kim_smoother(filtered, entry.spec.transition()).smoothed());
  }
}
BENCHMARK(bm_kim_smoother)->Arg(100)->Arg(1000);

void bm_fuzzy_kmeans(benchmark::State& state) {
  const auto& entry = dgp_by_label("MS3--1");
  const auto [y, path] = simulate_ms(entry.spec, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuzzy_kmeans(y, 3).objective);
  }
}
BENCHMARK(bm_fuzzy_kmeans)->Arg(100)->Arg(1000);

void bm_rand_index(benchmark::State& state) {
  const auto& entry = dgp_by_label("MS3--1");
  const std::size_t T = static_cast<std::size_t>(state.range(0));
  const StatePath a = simulate_chain(entry.spec.transition(), T, 11);
  const StatePath b = simulate_chain(entry.spec.transition(), T, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rand_index(a, b));
  }
}
BENCHMARK(bm_rand_index)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
