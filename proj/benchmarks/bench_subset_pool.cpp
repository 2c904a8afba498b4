#include <benchmark/benchmark.h>

#include "mlcc/rng.hpp"
#include "mlcc/subset_pool.hpp"

namespace {

mlcc::LabelMatrix random_labels(mlcc::Index n, mlcc::Index m, std::uint64_t seed) {
  mlcc::Rng rng = mlcc::make_rng(seed);
  mlcc::LabelMatrix labels(n, m);
  for (mlcc::Index i = 0; i < n; ++i) {
    for (mlcc::Index j = 0; j < m; ++j) {
      labels(i, j) = static_cast<int>(mlcc::uniform_below(rng, 2));
    }
  }
  return labels;
}

void BuildSubsetPool(benchmark::State& state) {
  const mlcc::LabelMatrix labels = random_labels(state.range(0), 20, 31);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::build_subset_pool(labels));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BuildSubsetPool)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void SubsetCorrect(benchmark::State& state) {
  const mlcc::LabelMatrix labels = random_labels(state.range(0), 20, 32);
  const mlcc::LabelSubsetPool pool = mlcc::build_subset_pool(labels);
  mlcc::Rng rng = mlcc::make_rng(33);
  mlcc::LabelVector prediction(20);
  for (int& v : prediction) v = static_cast<int>(mlcc::uniform_below(rng, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::subset_correct(prediction, pool));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SubsetCorrect)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

}  // namespace
