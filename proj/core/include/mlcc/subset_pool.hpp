#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlcc/dataset.hpp"

namespace mlcc {

/// Distinct label combinations observed in training data, with frequencies.
/// Insertion order is first-occurrence order, which is the last resort of the
/// subset-correction tie cascade.
struct LabelSubsetPool {
  std::vector<LabelVector> subsets;  // pairwise distinct
  std::vector<std::int64_t> counts;  // counts[i] >= 1
  Index label_count = 0;             // m

  std::size_t size() const { return subsets.size(); }

  /// Number of distinct subsets divided by 2^m.
  double observation_rate() const;
};

LabelSubsetPool build_subset_pool(const LabelMatrix& labels);

/// Replaces a prediction by the closest pool element under Hamming distance.
/// Ties are broken by higher training frequency, then by earlier first
/// occurrence in the training data.
LabelVector subset_correct(std::span<const int> prediction,
                           const LabelSubsetPool& pool);

/// True if the vector equals some pool element (used by the harness audit).
bool pool_contains(const LabelSubsetPool& pool, std::span<const int> candidate);

}  // namespace mlcc
