#include <benchmark/benchmark.h>

#include "mlcc/dataset.hpp"
#include "mlcc/metrics.hpp"
#include "mlcc/rng.hpp"

namespace {

void ScoreInstance(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  mlcc::Rng rng = mlcc::make_rng(41);
  mlcc::LabelVector y(m), yhat(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = static_cast<int>(mlcc::uniform_below(rng, 2));
    yhat[i] = static_cast<int>(mlcc::uniform_below(rng, 2));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::score_instance(y, yhat));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ScoreInstance)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

}  // namespace
