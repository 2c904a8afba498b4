#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlcc/chains.hpp"
#include "mlcc/dataset.hpp"
#include "mlcc/synth.hpp"

namespace mlcc {

enum class Algorithm {
  kBinaryRelevance,
  kClassifierChain,
  kNestedStacking,
  kStacking,
  kEnsembleOfChains,
};

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

enum class OrderMode { kIdentity, kRandom };

/// Cross-validated evaluation of one algorithm. Every fold/repeat is an
/// independent work unit with a seed derived from the master seed, so results
/// are identical no matter how many threads execute them.
struct CvConfig {
  Algorithm algorithm = Algorithm::kBinaryRelevance;
  int folds = 10;
  int repeats = 3;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  bool subset_correction = false;
  OrderMode order_mode = OrderMode::kRandom;  // chain order for cc/ns
  bool standardize = false;  // per-column feature standardization on the training fold
  OptimizerConfig optimizer;
  EnsembleOptions ensemble;   // used when algorithm == kEnsembleOfChains
  StackingOptions stacking;   // used when algorithm == kStacking
  int threads = 0;            // 0 = hardware concurrency
};

struct MetricSeries {
  std::vector<double> per_fold;  // repeats * folds values, repeat-major order
  double mean = 0.0;
  double sd = 0.0;
};

struct CvReport {
  std::string toolkit_version;
  std::string dataset_path;  // informational; set by the caller
  Index n = 0, d = 0, m = 0;
  Algorithm algorithm = Algorithm::kBinaryRelevance;
  int folds = 0;
  int repeats = 0;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  bool subset_correction = false;
  OrderMode order_mode = OrderMode::kRandom;
  bool standardize = false;
  OptimizerConfig optimizer;
  EnsembleOptions ensemble;

  MetricSeries hamming;
  MetricSeries subset_zero_one;
  MetricSeries f1;
  MetricSeries jaccard;

  // Closed-world audit: with subset correction on, every emitted prediction
  // is checked for membership in the training fold's pool.
  std::int64_t audited_predictions = 0;
  std::int64_t outside_pool = 0;
};

CvReport run_cv(const Dataset& data, const CvConfig& config);

/// Self-contained JSON report (schema documented in the README); byte-stable
/// across runs with identical inputs.
std::string cv_report_to_json(const CvReport& report);

/// Paired t-tests per metric between two eval reports (JSON in, JSON out).
/// The reports must carry the same number of per-fold values.
std::string ttest_reports_json(const std::string& report_a,
                               const std::string& report_b);

/// Position-wise effect of chaining: for each seeded random label order, a
/// chain is cross-validated and the per-position 0/1 error is compared with
/// the binary-relevance error of the label occupying that position. Positions
/// whose BR error is zero are excluded from the average (the relative
/// increase is undefined there).
struct PositionExperimentConfig {
  int orders = 100;
  int folds = 10;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  int threads = 0;
};

struct PositionCurvePoint {
  double mean = 0.0;       // mean relative error increase over orders
  double std_error = 0.0;  // sd over orders / sqrt(count)
  int orders = 0;          // orders contributing (BR error > 0)
};

struct PositionCurve {
  std::vector<PositionCurvePoint> points;  // index = chain position
};

PositionCurve chain_position_experiment(const Dataset& data,
                                        const PositionExperimentConfig& config);

std::string position_curve_to_csv(const PositionCurve& curve);

/// Label-count sweep on synthetic data: per (m, repetition) a fresh
/// coefficient set and fresh train/test samples; BR, CC and NS are trained
/// on the training sample and their test losses are divided by the exact
/// Bayes loss of the generator.
struct ScalingConfig {
  std::vector<int> label_counts = {5, 10, 15, 20, 25};
  double tau = 0.0;
  double noise = 0.1;
  int repetitions = 10;
  Index train_n = 50;
  Index test_n = 1000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  int threads = 0;
};

enum class ScalingAlgo { kBR = 0, kCC = 1, kNS = 2 };
inline constexpr int kScalingAlgoCount = 3;

struct ScalingRun {
  double normalized_hamming[kScalingAlgoCount] = {0.0, 0.0, 0.0};
  double normalized_subset[kScalingAlgoCount] = {0.0, 0.0, 0.0};
};

struct ScalingResult {
  ScalingConfig config;
  // runs[i][r]: label_counts[i], repetition r
  std::vector<std::vector<ScalingRun>> runs;
};

ScalingResult label_scaling_experiment(const ScalingConfig& config);

std::string scaling_result_to_csv(const ScalingResult& result);

}  // namespace mlcc
