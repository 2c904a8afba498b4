#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlcc/dataset.hpp"
#include "mlcc/linear.hpp"

namespace mlcc {

/// Permutation of the label indices; at[p] is the label trained and predicted
/// at chain position p.
struct ChainOrder {
  std::vector<Index> at;

  Index size() const { return static_cast<Index>(at.size()); }
};

ChainOrder identity_order(Index label_count);
ChainOrder random_order(Index label_count, std::uint64_t seed);
ChainOrder make_chain_order(std::vector<Index> positions);  // validates bijection

/// How the predecessor-label attributes were produced at training time:
/// classifier chains use the true labels, nested stacking uses the chain's
/// own within-sample predictions.
enum class ChainStrategy { kClassifierChain, kNestedStacking };

std::string to_string(ChainStrategy strategy);

/// Binary relevance: one independent classifier per label over the original
/// d features.
struct BRModel {
  std::vector<LinearModel> classifiers;  // size m, input dimension d each
  Index feature_dim = 0;

  Index label_dim() const { return static_cast<Index>(classifiers.size()); }
};

/// A trained chain: the classifier at position p consumes the d original
/// features plus the p predecessor labels, in chain order.
struct ChainModel {
  ChainOrder order;
  std::vector<LinearModel> classifiers;  // classifiers[p] has dimension d + p
  ChainStrategy strategy = ChainStrategy::kClassifierChain;
  Index feature_dim = 0;

  Index label_dim() const { return static_cast<Index>(classifiers.size()); }
};

/// Two-level stack: level 1 is binary relevance, level 2 sees the original
/// features plus all m level-1 outputs. Predictions come from level 2 only.
struct StackingModel {
  BRModel level1;
  std::vector<LinearModel> level2;  // size m, input dimension d + m each
  Index feature_dim = 0;

  Index label_dim() const { return static_cast<Index>(level2.size()); }
};

/// Ensemble of chains with per-label vote proportions against a threshold.
struct EnsembleModel {
  std::vector<ChainModel> members;
  double threshold = 0.5;
  std::vector<std::uint64_t> member_seeds;  // per-member sampling descriptors
};

BRModel train_br(const Dataset& data, const OptimizerConfig& config);

/// Chain trained on the true predecessor labels (the classic formulation).
ChainModel train_cc(const Dataset& data, const ChainOrder& order,
                    const OptimizerConfig& config);

/// Chain trained on its own cascaded within-sample predictions, so the
/// attribute distribution seen in training matches the one at prediction
/// time. Predecessor predictions are thresholded at 0.5.
ChainModel train_ns(const Dataset& data, const ChainOrder& order,
                    const OptimizerConfig& config);

struct StackingOptions {
  /// When true, level 2 trains on the true labels instead of the level-1
  /// within-sample predictions.
  bool augment_with_true_labels = false;
};

StackingModel train_stacking(const Dataset& data, const OptimizerConfig& config,
                             const StackingOptions& options = {});

struct EnsembleOptions {
  int members = 10;        // k
  double threshold = 0.5;  // voting threshold t
  bool bootstrap = true;   // n draws with replacement per member
  std::optional<ChainOrder> fixed_order;  // default: seeded random per member
};

/// k chains, each with its own seeded random order and bootstrap sample;
/// deterministic given the seed.
EnsembleModel train_ecc(const Dataset& data, const EnsembleOptions& options,
                        const OptimizerConfig& config, std::uint64_t seed);

LabelVector predict_br(const BRModel& model, const Vector& x, double threshold);
LabelVector predict_chain(const ChainModel& model, const Vector& x,
                          double threshold);
LabelVector predict_stacking(const StackingModel& model, const Vector& x,
                             double threshold);
LabelVector predict_ecc(const EnsembleModel& model, const Vector& x);

/// Batch forms; row i of the result is the prediction for row i of the input.
LabelMatrix predict_br(const BRModel& model, const Matrix& features,
                       double threshold);
LabelMatrix predict_chain(const ChainModel& model, const Matrix& features,
                          double threshold);
LabelMatrix predict_stacking(const StackingModel& model, const Matrix& features,
                             double threshold);
LabelMatrix predict_ecc(const EnsembleModel& model, const Matrix& features);

}  // namespace mlcc
