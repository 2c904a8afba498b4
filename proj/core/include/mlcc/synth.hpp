#pragma once

#include <cstdint>
#include <vector>

#include "mlcc/dataset.hpp"

namespace mlcc {

/// Parameters of the two-dimensional synthetic generator. Each label j has a
/// linear decision boundary through the origin with coefficients
/// (a1, a2) = (1 - tau*r1, tau*r2), r1 and r2 drawn uniformly from [0,1].
/// tau = 0 gives every label the same boundary (maximal dependence); tau = 1
/// decorrelates the boundaries. After clean labeling, every (instance, label)
/// entry is flipped independently with probability `noise`.
struct SyntheticSpec {
  int label_count = 0;  // m
  double tau = 0.0;
  double noise = 0.0;  // flip probability pi
  std::vector<std::pair<double, double>> coefficients;  // (a1, a2) per label
  std::uint64_t seed = 0;
};

enum class SynthMetric { kHamming, kSubsetZeroOne };

SyntheticSpec make_spec(int label_count, double tau, double noise,
                        std::uint64_t seed);

/// Clean (noise-free) labeling of a point: label j = 1 iff a1*x1 + a2*x2 >= 0.
/// This is also the Bayes-optimal predictor when noise < 0.5.
LabelVector clean_labels(const SyntheticSpec& spec, double x1, double x2);

/// n points uniform on the unit disk, labeled by the clean rule, then each
/// label flipped independently with probability spec.noise. Deterministic
/// given (spec, seed).
Dataset sample(const SyntheticSpec& spec, Index n, std::uint64_t seed);

/// Expected loss of the Bayes-optimal (clean-rule) predictor in closed form:
/// hamming -> noise; subset 0/1 -> 1 - (1-noise)^m. Requires noise < 0.5.
double bayes_loss(const SyntheticSpec& spec, SynthMetric metric);

}  // namespace mlcc
