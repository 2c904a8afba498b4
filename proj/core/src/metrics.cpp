#include "mlcc/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlcc {

namespace {

void check_pair(std::span<const int> y, std::span<const int> yhat) {
  if (y.size() != yhat.size()) {
    throw std::invalid_argument("label vectors have different lengths (" +
                                std::to_string(y.size()) + " vs " +
                                std::to_string(yhat.size()) + ")");
  }
  if (y.empty()) {
    throw std::invalid_argument("label vectors must have at least one entry");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if ((y[i] != 0 && y[i] != 1) || (yhat[i] != 0 && yhat[i] != 1)) {
      throw std::invalid_argument("label vectors must be binary");
    }
  }
}

}  // namespace

double hamming_loss(std::span<const int> y, std::span<const int> yhat) {
  check_pair(y, yhat);
  int mismatches = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    mismatches += (y[i] != yhat[i]);
  }
  return static_cast<double>(mismatches) / static_cast<double>(y.size());
}

int subset_zero_one(std::span<const int> y, std::span<const int> yhat) {
  check_pair(y, yhat);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != yhat[i]) return 1;
  }
  return 0;
}

double f1_score(std::span<const int> y, std::span<const int> yhat) {
  check_pair(y, yhat);
  int both = 0, positives = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    both += (y[i] == 1 && yhat[i] == 1);
    positives += y[i] + yhat[i];
  }
  if (positives == 0) return 1.0;  // both sets empty: exact agreement
  return 2.0 * static_cast<double>(both) / static_cast<double>(positives);
}

double jaccard_score(std::span<const int> y, std::span<const int> yhat) {
  check_pair(y, yhat);
  int both = 0, either = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    both += (y[i] == 1 && yhat[i] == 1);
    either += (y[i] == 1 || yhat[i] == 1);
  }
  if (either == 0) return 1.0;  // both sets empty: exact agreement
  return static_cast<double>(both) / static_cast<double>(either);
}

InstanceScore score_instance(std::span<const int> y, std::span<const int> yhat) {
  InstanceScore score;
  score.hamming = hamming_loss(y, yhat);
  score.subset_zero_one = subset_zero_one(y, yhat);
  score.f1 = f1_score(y, yhat);
  score.jaccard = jaccard_score(y, yhat);
  return score;
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty sequence");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("standard deviation of an empty sequence");
  }
  if (values.size() == 1) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

MetricsSummary aggregate(std::span<const InstanceScore> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("aggregate requires at least one instance score");
  }
  std::vector<double> h, z, f, j;
  h.reserve(scores.size());
  z.reserve(scores.size());
  f.reserve(scores.size());
  j.reserve(scores.size());
  for (const InstanceScore& s : scores) {
    h.push_back(s.hamming);
    z.push_back(static_cast<double>(s.subset_zero_one));
    f.push_back(s.f1);
    j.push_back(s.jaccard);
  }
  MetricsSummary out;
  out.hamming = {mean(h), sample_sd(h)};
  out.subset_zero_one = {mean(z), sample_sd(z)};
  out.f1 = {mean(f), sample_sd(f)};
  out.jaccard = {mean(j), sample_sd(j)};
  return out;
}

}  // namespace mlcc
