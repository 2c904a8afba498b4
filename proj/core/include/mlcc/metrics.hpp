#pragma once

#include <span>
#include <vector>

namespace mlcc {

/// Example-based multi-label scores for one (truth, prediction) pair.
/// hamming and subset_zero_one are losses; f1 and jaccard are accuracies.
double hamming_loss(std::span<const int> y, std::span<const int> yhat);
int subset_zero_one(std::span<const int> y, std::span<const int> yhat);

/// 2|y & yhat| / (|y| + |yhat|); 1 when both vectors are all-zero.
double f1_score(std::span<const int> y, std::span<const int> yhat);

/// |y & yhat| / |y | yhat|; 1 when both vectors are all-zero.
double jaccard_score(std::span<const int> y, std::span<const int> yhat);

struct InstanceScore {
  double hamming = 0.0;
  int subset_zero_one = 0;
  double f1 = 0.0;
  double jaccard = 0.0;
};

InstanceScore score_instance(std::span<const int> y, std::span<const int> yhat);

struct ScoreSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n-1); 0 for a single value
};

struct MetricsSummary {
  ScoreSummary hamming;
  ScoreSummary subset_zero_one;
  ScoreSummary f1;
  ScoreSummary jaccard;
};

/// Per-metric mean and sample standard deviation over a non-empty batch.
MetricsSummary aggregate(std::span<const InstanceScore> scores);

double mean(std::span<const double> values);
double sample_sd(std::span<const double> values);

}  // namespace mlcc
