#include <benchmark/benchmark.h>

#include "mlcc/linear.hpp"
#include "mlcc/synth.hpp"

namespace {

void TrainBinary(benchmark::State& state) {
  const mlcc::Index n = state.range(0);
  const mlcc::SyntheticSpec spec = mlcc::make_spec(1, 1.0, 0.1, 7);
  const mlcc::Dataset data = mlcc::sample(spec, n, 8);
  const mlcc::BinaryProblem problem{data.features,
                                    mlcc::label_column(data.labels, 0)};
  const mlcc::OptimizerConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::train_binary(problem, config));
  }
  state.SetComplexityN(n);
}
BENCHMARK(TrainBinary)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void LossAndGradient(benchmark::State& state) {
  const mlcc::Index n = state.range(0);
  const mlcc::SyntheticSpec spec = mlcc::make_spec(1, 1.0, 0.1, 9);
  const mlcc::Dataset data = mlcc::sample(spec, n, 10);
  const mlcc::BinaryProblem problem{data.features,
                                    mlcc::label_column(data.labels, 0)};
  mlcc::LinearModel model;
  model.weights = mlcc::Vector::Constant(2, 0.25);
  model.bias = -0.1;
  model.regularization = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlcc::loss_and_gradient(model, problem));
  }
  state.SetComplexityN(n);
}
BENCHMARK(LossAndGradient)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

}  // namespace
