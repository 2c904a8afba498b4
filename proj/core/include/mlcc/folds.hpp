#pragma once

#include <cstdint>
#include <vector>

#include "mlcc/dataset.hpp"

namespace mlcc {

struct FoldSplit {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Seeded shuffle of {0,...,n-1} followed by a contiguous partition into k
/// folds of size floor(n/k) or ceil(n/k). Test folds are disjoint and cover
/// all indices; deterministic per seed.
std::vector<FoldSplit> kfold_indices(Index n, int k, std::uint64_t seed);

}  // namespace mlcc
