#include "mlcc/folds.hpp"

#include <stdexcept>
#include <string>

#include "mlcc/rng.hpp"

namespace mlcc {

std::vector<FoldSplit> kfold_indices(Index n, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<Index>(k) > n) {
    throw std::invalid_argument("kfold_indices: k must satisfy 2 <= k <= n (k=" +
                                std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }

  Rng rng = make_rng(seed);
  std::vector<std::size_t> order = random_permutation(static_cast<std::size_t>(n), rng);

  // The first (n mod k) folds take one extra element.
  const Index base = n / k;
  const Index extra = n % k;
  std::vector<FoldSplit> folds;
  folds.reserve(static_cast<std::size_t>(k));
  Index cursor = 0;
  for (int f = 0; f < k; ++f) {
    const Index size = base + (static_cast<Index>(f) < extra ? 1 : 0);
    FoldSplit split;
    split.test.reserve(static_cast<std::size_t>(size));
    split.train.reserve(static_cast<std::size_t>(n - size));
    for (Index i = 0; i < n; ++i) {
      const Index row = static_cast<Index>(order[static_cast<std::size_t>(i)]);
      if (i >= cursor && i < cursor + size) {
        split.test.push_back(row);
      } else {
        split.train.push_back(row);
      }
    }
    cursor += size;
    folds.push_back(std::move(split));
  }
  return folds;
}

}  // namespace mlcc
