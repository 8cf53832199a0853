// Microbenchmarks: learned_sort against std::sort and the LSD radix baseline
// per generator family. The timed region is one sort of a fresh copy.
//
//   ./sort_benchmark --benchmark_filter='zipf'

#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "learned_sort/datagen.hpp"
#include "learned_sort/radix_sort.hpp"
#include "learned_sort/sorter.hpp"

namespace ls = learnedsort;

namespace {

const std::vector<double>& dataset(ls::Family family, std::size_t n) {
  static std::map<std::pair<ls::Family, std::size_t>, std::vector<double>> cache;
  auto& slot = cache[{family, n}];
  if (slot.empty()) slot = ls::generate(ls::DatasetSpec{family, n, {}, 42});
  return slot;
}

template <typename SortFn>
void run(benchmark::State& state, SortFn sort) {
  const auto family = static_cast<ls::Family>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto& input = dataset(family, n);
  std::vector<double> work(n);
  for (auto _ : state) {
    state.PauseTiming();
    std::copy(input.begin(), input.end(), work.begin());
    state.ResumeTiming();
    sort(work);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.SetLabel(std::string(ls::family_name(family)));
}

void args(benchmark::internal::Benchmark* b) {
  for (ls::Family f : ls::kAllFamilies) {
    for (std::int64_t n : {100'000, 1'000'000}) b->Args({static_cast<std::int64_t>(f), n});
  }
  b->Unit(benchmark::kMillisecond);
}

void BM_LearnedSort(benchmark::State& state) {
  run(state, [](std::vector<double>& v) { ls::learned_sort(v); });
}
void BM_StdSort(benchmark::State& state) {
  run(state, [](std::vector<double>& v) { std::sort(v.begin(), v.end()); });
}
void BM_LsdRadix(benchmark::State& state) {
  run(state, [](std::vector<double>& v) { ls::lsd_radix_sort(std::span<double>(v)); });
}

}  // namespace

BENCHMARK(BM_LearnedSort)->Apply(args);
BENCHMARK(BM_StdSort)->Apply(args);
BENCHMARK(BM_LsdRadix)->Apply(args);
BENCHMARK_MAIN();
