#include "mlcc/subset_pool.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mlcc {

double LabelSubsetPool::observation_rate() const {
  // ldexp keeps this exact even for large m, where 2^m overflows integers.
  return std::ldexp(static_cast<double>(subsets.size()),
                    -static_cast<int>(label_count));
}

LabelSubsetPool build_subset_pool(const LabelMatrix& labels) {
  const Index n = labels.rows();
  const Index m = labels.cols();
  if (n < 1 || m < 1) {
    throw std::invalid_argument("subset pool requires a non-empty label matrix");
  }

  LabelSubsetPool pool;
  pool.label_count = m;

  std::unordered_map<std::string, std::size_t> index_of;
  index_of.reserve(static_cast<std::size_t>(n));
  std::string key(static_cast<std::size_t>(m), '0');
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const int v = labels(i, j);
      if (v != 0 && v != 1) {
        throw std::invalid_argument("subset pool labels must be binary");
      }
      key[static_cast<std::size_t>(j)] = static_cast<char>('0' + v);
    }
    auto [it, inserted] = index_of.try_emplace(key, pool.subsets.size());
    if (inserted) {
      LabelVector row(static_cast<std::size_t>(m));
      for (Index j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = labels(i, j);
      pool.subsets.push_back(std::move(row));
      pool.counts.push_back(1);
    } else {
      ++pool.counts[it->second];
    }
  }
  return pool;
}

namespace {

int hamming_mismatches(std::span<const int> a, const LabelVector& b) {
  int mismatches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mismatches += (a[i] != b[i]);
  return mismatches;
}

}  // namespace

LabelVector subset_correct(std::span<const int> prediction,
                           const LabelSubsetPool& pool) {
  if (pool.subsets.empty()) {
    throw std::invalid_argument("subset_correct requires a non-empty pool");
  }
  if (static_cast<Index>(prediction.size()) != pool.label_count) {
    throw std::invalid_argument(
        "prediction length " + std::to_string(prediction.size()) +
        " does not match pool label count " + std::to_string(pool.label_count));
  }

  std::size_t best = 0;
  int best_distance = hamming_mismatches(prediction, pool.subsets[0]);
  for (std::size_t i = 1; i < pool.subsets.size(); ++i) {
    const int distance = hamming_mismatches(prediction, pool.subsets[i]);
    if (distance < best_distance ||
        (distance == best_distance && pool.counts[i] > pool.counts[best])) {
      best = i;
      best_distance = distance;
    }
    // equal distance and count: keep the earlier first occurrence
  }
  return pool.subsets[best];
}

bool pool_contains(const LabelSubsetPool& pool, std::span<const int> candidate) {
  if (static_cast<Index>(candidate.size()) != pool.label_count) return false;
  for (const LabelVector& subset : pool.subsets) {
    if (hamming_mismatches(candidate, subset) == 0) return true;
  }
  return false;
}

}  // namespace mlcc
