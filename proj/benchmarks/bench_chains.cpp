#include <benchmark/benchmark.h>

#include "mlcc/chains.hpp"
#include "mlcc/synth.hpp"

namespace {

void TrainChain(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mlcc::SyntheticSpec spec = mlcc::make_spec(m, 0.0, 0.1, 21);
  const mlcc::Dataset data = mlcc::sample(spec, 50, 22);
  const mlcc::ChainOrder order = mlcc::identity_order(m);
  const mlcc::OptimizerConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::train_cc(data, order, config));
  }
  state.SetComplexityN(m);
}
BENCHMARK(TrainChain)->DenseRange(5, 25, 10)->Complexity();

void PredictChain(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const mlcc::SyntheticSpec spec = mlcc::make_spec(m, 0.0, 0.1, 23);
  const mlcc::Dataset train = mlcc::sample(spec, 50, 24);
  const mlcc::Dataset test = mlcc::sample(spec, 1000, 25);
  const mlcc::ChainModel model =
      mlcc::train_cc(train, mlcc::identity_order(m), mlcc::OptimizerConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::predict_chain(model, test.features, 0.5));
  }
  state.SetComplexityN(m);
}
BENCHMARK(PredictChain)->DenseRange(5, 25, 10)->Complexity();

}  // namespace
