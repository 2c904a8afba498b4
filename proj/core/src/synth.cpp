#include "mlcc/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mlcc/rng.hpp"

namespace mlcc {

SyntheticSpec make_spec(int label_count, double tau, double noise,
                        std::uint64_t seed) {
  if (label_count < 1) {
    throw std::invalid_argument("make_spec: label_count must be >= 1");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("make_spec: tau must lie in [0,1]");
  }
  if (!(noise >= 0.0 && noise < 1.0)) {
    throw std::invalid_argument("make_spec: noise must lie in [0,1)");
  }
  SyntheticSpec spec;
  spec.label_count = label_count;
  spec.tau = tau;
  spec.noise = noise;
  spec.seed = seed;
  spec.coefficients.reserve(static_cast<std::size_t>(label_count));
  Rng rng = make_rng(seed);
  for (int j = 0; j < label_count; ++j) {
    const double r1 = uniform_double(rng);
    const double r2 = uniform_double(rng);
    spec.coefficients.emplace_back(1.0 - tau * r1, tau * r2);
  }
  return spec;
}

LabelVector clean_labels(const SyntheticSpec& spec, double x1, double x2) {
  LabelVector labels(spec.coefficients.size());
  for (std::size_t j = 0; j < spec.coefficients.size(); ++j) {
    const auto [a1, a2] = spec.coefficients[j];
    labels[j] = (a1 * x1 + a2 * x2 >= 0.0) ? 1 : 0;
  }
  return labels;
}

Dataset sample(const SyntheticSpec& spec, Index n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("sample: n must be >= 1");
  }
  const Index m = static_cast<Index>(spec.label_count);
  Matrix features(n, 2);
  LabelMatrix labels(n, m);

  Rng rng = make_rng(seed);
  for (Index i = 0; i < n; ++i) {
    // Uniform on the unit disk by rejection from the bounding square.
    double x1, x2;
    do {
      x1 = 2.0 * uniform_double(rng) - 1.0;
      x2 = 2.0 * uniform_double(rng) - 1.0;
    } while (x1 * x1 + x2 * x2 > 1.0);
    features(i, 0) = x1;
    features(i, 1) = x2;

    const LabelVector clean = clean_labels(spec, x1, x2);
    for (Index j = 0; j < m; ++j) {
      int value = clean[static_cast<std::size_t>(j)];
      if (spec.noise > 0.0 && uniform_double(rng) < spec.noise) {
        value = 1 - value;
      }
      labels(i, j) = value;
    }
  }
  return make_dataset(std::move(features), std::move(labels));
}

double bayes_loss(const SyntheticSpec& spec, SynthMetric metric) {
  if (!(spec.noise < 0.5)) {
    throw std::invalid_argument(
        "bayes_loss: noise must be < 0.5 (the clean rule is no longer the "
        "Bayes predictor otherwise)");
  }
  switch (metric) {
    case SynthMetric::kHamming:
      return spec.noise;
    case SynthMetric::kSubsetZeroOne:
      return 1.0 - std::pow(1.0 - spec.noise, spec.label_count);
  }
  throw std::invalid_argument("bayes_loss: unknown metric");
}

}  // namespace mlcc
