#include "mlcc/chains.hpp"

#include <stdexcept>
#include <string>

#include "mlcc/rng.hpp"

namespace mlcc {

namespace {

// Fixed relevance rule used where no user threshold applies: within-sample
// predecessor attributes and the votes cast by ensemble members.
constexpr double kFixedDecisionThreshold = 0.5;

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// All prediction paths score through this one kernel (contiguous dot product)
// so batch and single-instance predictions agree bit for bit.
double score_row(const LinearModel& model, const double* row, Index length) {
  Eigen::Map<const Vector> x(row, length);
  return model.bias + model.weights.dot(x);
}

int label_from_score(double score, double threshold) {
  return logistic(score) >= threshold ? 1 : 0;
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0,1)");
  }
}

void check_feature_dim(Index expected, Index got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": input dimension " +
                                std::to_string(got) + " does not match model dimension " +
                                std::to_string(expected));
  }
}

void check_chain_shape(const ChainModel& model, const char* what) {
  if (model.order.size() != model.label_dim()) {
    throw std::invalid_argument(std::string(what) + ": order length does not match "
                                "classifier count");
  }
  for (Index p = 0; p < model.label_dim(); ++p) {
    if (model.classifiers[static_cast<std::size_t>(p)].weights.size() !=
        model.feature_dim + p) {
      throw std::invalid_argument(std::string(what) + ": classifier at position " +
                                  std::to_string(p) + " does not have dimension d + " +
                                  std::to_string(p));
    }
  }
}

RowMajorMatrix to_row_major(const Matrix& features) { return features; }

}  // namespace

ChainOrder identity_order(Index label_count) {
  ChainOrder order;
  order.at.resize(static_cast<std::size_t>(label_count));
  for (Index j = 0; j < label_count; ++j) {
    order.at[static_cast<std::size_t>(j)] = j;
  }
  return order;
}

ChainOrder random_order(Index label_count, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const std::vector<std::size_t> perm =
      random_permutation(static_cast<std::size_t>(label_count), rng);
  ChainOrder order;
  order.at.reserve(perm.size());
  for (std::size_t p : perm) order.at.push_back(static_cast<Index>(p));
  return order;
}

ChainOrder make_chain_order(std::vector<Index> positions) {
  std::vector<bool> seen(positions.size(), false);
  for (Index label : positions) {
    if (label < 0 || label >= static_cast<Index>(positions.size()) ||
        seen[static_cast<std::size_t>(label)]) {
      throw std::invalid_argument("chain order is not a permutation of the labels");
    }
    seen[static_cast<std::size_t>(label)] = true;
  }
  return ChainOrder{std::move(positions)};
}

std::string to_string(ChainStrategy strategy) {
  return strategy == ChainStrategy::kClassifierChain ? "cc" : "ns";
}

BRModel train_br(const Dataset& data, const OptimizerConfig& config) {
  BRModel model;
  model.feature_dim = data.feature_dim();
  model.classifiers.reserve(static_cast<std::size_t>(data.label_dim()));
  for (Index j = 0; j < data.label_dim(); ++j) {
    const BinaryProblem problem{data.features, label_column(data.labels, j)};
    model.classifiers.push_back(train_binary(problem, config));
  }
  return model;
}

namespace {

void check_order(const Dataset& data, const ChainOrder& order) {
  if (order.size() != data.label_dim()) {
    throw std::invalid_argument("chain order length " + std::to_string(order.size()) +
                                " does not match label count " +
                                std::to_string(data.label_dim()));
  }
  make_chain_order(order.at);  // bijection check
}

}  // namespace

ChainModel train_cc(const Dataset& data, const ChainOrder& order,
                    const OptimizerConfig& config) {
  check_order(data, order);
  const Index n = data.rows();
  const Index d = data.feature_dim();
  const Index m = data.label_dim();

  Matrix augmented(n, d + m);
  augmented.leftCols(d) = data.features;

  ChainModel model;
  model.order = order;
  model.strategy = ChainStrategy::kClassifierChain;
  model.feature_dim = d;
  model.classifiers.reserve(static_cast<std::size_t>(m));
  for (Index p = 0; p < m; ++p) {
    const Index label = order.at[static_cast<std::size_t>(p)];
    const Vector target = label_column(data.labels, label);
    const BinaryProblem problem{augmented.leftCols(d + p), target};
    model.classifiers.push_back(train_binary(problem, config));
    // The next position sees the true value of this label.
    augmented.col(d + p) = target;
  }
  return model;
}

ChainModel train_ns(const Dataset& data, const ChainOrder& order,
                    const OptimizerConfig& config) {
  check_order(data, order);
  const Index n = data.rows();
  const Index d = data.feature_dim();
  const Index m = data.label_dim();

  // Row-major so each row prefix is contiguous for the scoring kernel.
  RowMajorMatrix augmented(n, d + m);
  augmented.leftCols(d) = data.features;

  ChainModel model;
  model.order = order;
  model.strategy = ChainStrategy::kNestedStacking;
  model.feature_dim = d;
  model.classifiers.reserve(static_cast<std::size_t>(m));
  for (Index p = 0; p < m; ++p) {
    const Index label = order.at[static_cast<std::size_t>(p)];
    const Vector target = label_column(data.labels, label);
    const BinaryProblem problem{augmented.leftCols(d + p), target};
    model.classifiers.push_back(train_binary(problem, config));
    // The next position sees this classifier's own within-sample prediction,
    // computed from the predicted (not true) predecessor values.
    const LinearModel& trained = model.classifiers.back();
    for (Index i = 0; i < n; ++i) {
      const double score = score_row(trained, augmented.row(i).data(), d + p);
      augmented(i, d + p) =
          static_cast<double>(label_from_score(score, kFixedDecisionThreshold));
    }
  }
  return model;
}

StackingModel train_stacking(const Dataset& data, const OptimizerConfig& config,
                             const StackingOptions& options) {
  const Index n = data.rows();
  const Index d = data.feature_dim();
  const Index m = data.label_dim();

  StackingModel model;
  model.feature_dim = d;
  model.level1 = train_br(data, config);

  RowMajorMatrix augmented(n, d + m);
  augmented.leftCols(d) = data.features;
  if (options.augment_with_true_labels) {
    for (Index j = 0; j < m; ++j) {
      augmented.col(d + j) = label_column(data.labels, j);
    }
  } else {
    const RowMajorMatrix rows = to_row_major(data.features);
    for (Index j = 0; j < m; ++j) {
      const LinearModel& level1_model =
          model.level1.classifiers[static_cast<std::size_t>(j)];
      for (Index i = 0; i < n; ++i) {
        const double score = score_row(level1_model, rows.row(i).data(), d);
        augmented(i, d + j) =
            static_cast<double>(label_from_score(score, kFixedDecisionThreshold));
      }
    }
  }

  model.level2.reserve(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    const BinaryProblem problem{augmented, label_column(data.labels, j)};
    model.level2.push_back(train_binary(problem, config));
  }
  return model;
}

EnsembleModel train_ecc(const Dataset& data, const EnsembleOptions& options,
                        const OptimizerConfig& config, std::uint64_t seed) {
  if (options.members < 1) {
    throw std::invalid_argument("train_ecc: ensemble needs at least one member");
  }
  check_threshold(options.threshold);
  if (options.fixed_order) {
    check_order(data, *options.fixed_order);
  }

  const Index n = data.rows();
  const Index m = data.label_dim();

  EnsembleModel model;
  model.threshold = options.threshold;
  model.members.reserve(static_cast<std::size_t>(options.members));
  model.member_seeds.reserve(static_cast<std::size_t>(options.members));
  for (int member = 0; member < options.members; ++member) {
    const std::uint64_t member_seed =
        derive_seed(seed, static_cast<std::uint64_t>(member));
    model.member_seeds.push_back(member_seed);

    const ChainOrder order =
        options.fixed_order
            ? *options.fixed_order
            : random_order(m, derive_seed(member_seed, 1));

    if (options.bootstrap) {
      Rng rng = make_rng(derive_seed(member_seed, 2));
      const std::vector<std::size_t> draws =
          bootstrap_indices(static_cast<std::size_t>(n), rng);
      std::vector<Index> rows(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) {
        rows[i] = static_cast<Index>(draws[i]);
      }
      model.members.push_back(train_cc(subset_rows(data, rows), order, config));
    } else {
      model.members.push_back(train_cc(data, order, config));
    }
  }
  return model;
}

LabelVector predict_br(const BRModel& model, const Vector& x, double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, x.size(), "predict_br");
  LabelVector out(static_cast<std::size_t>(model.label_dim()));
  for (Index j = 0; j < model.label_dim(); ++j) {
    const double score =
        score_row(model.classifiers[static_cast<std::size_t>(j)], x.data(), x.size());
    out[static_cast<std::size_t>(j)] = label_from_score(score, threshold);
  }
  return out;
}

LabelVector predict_chain(const ChainModel& model, const Vector& x,
                          double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, x.size(), "predict_chain");
  check_chain_shape(model, "predict_chain");
  const Index d = model.feature_dim;
  const Index m = model.label_dim();

  Vector augmented(d + m);
  augmented.head(d) = x;
  LabelVector out(static_cast<std::size_t>(m));
  for (Index p = 0; p < m; ++p) {
    const double score =
        score_row(model.classifiers[static_cast<std::size_t>(p)], augmented.data(), d + p);
    const int label = label_from_score(score, threshold);
    augmented[d + p] = static_cast<double>(label);
    out[static_cast<std::size_t>(model.order.at[static_cast<std::size_t>(p)])] = label;
  }
  return out;
}

LabelVector predict_stacking(const StackingModel& model, const Vector& x,
                             double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, x.size(), "predict_stacking");
  const Index d = model.feature_dim;
  const Index m = model.label_dim();

  Vector augmented(d + m);
  augmented.head(d) = x;
  for (Index j = 0; j < m; ++j) {
    const double score =
        score_row(model.level1.classifiers[static_cast<std::size_t>(j)], x.data(), d);
    augmented[d + j] =
        static_cast<double>(label_from_score(score, kFixedDecisionThreshold));
  }
  LabelVector out(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    const double score =
        score_row(model.level2[static_cast<std::size_t>(j)], augmented.data(), d + m);
    out[static_cast<std::size_t>(j)] = label_from_score(score, threshold);
  }
  return out;
}

LabelVector predict_ecc(const EnsembleModel& model, const Vector& x) {
  if (model.members.empty()) {
    throw std::invalid_argument("predict_ecc: ensemble has no members");
  }
  const Index m = model.members.front().label_dim();
  std::vector<int> votes(static_cast<std::size_t>(m), 0);
  for (const ChainModel& member : model.members) {
    const LabelVector prediction = predict_chain(member, x, kFixedDecisionThreshold);
    for (Index j = 0; j < m; ++j) {
      votes[static_cast<std::size_t>(j)] += prediction[static_cast<std::size_t>(j)];
    }
  }
  const double k = static_cast<double>(model.members.size());
  LabelVector out(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    const double proportion = static_cast<double>(votes[static_cast<std::size_t>(j)]) / k;
    out[static_cast<std::size_t>(j)] = proportion >= model.threshold ? 1 : 0;
  }
  return out;
}

LabelMatrix predict_br(const BRModel& model, const Matrix& features,
                       double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, features.cols(), "predict_br");
  const RowMajorMatrix rows = to_row_major(features);
  const Index n = features.rows();
  const Index m = model.label_dim();
  LabelMatrix out(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double score = score_row(model.classifiers[static_cast<std::size_t>(j)],
                                     rows.row(i).data(), features.cols());
      out(i, j) = label_from_score(score, threshold);
    }
  }
  return out;
}

LabelMatrix predict_chain(const ChainModel& model, const Matrix& features,
                          double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, features.cols(), "predict_chain");
  check_chain_shape(model, "predict_chain");
  const Index n = features.rows();
  const Index d = model.feature_dim;
  const Index m = model.label_dim();

  RowMajorMatrix augmented(n, d + m);
  augmented.leftCols(d) = features;
  LabelMatrix out(n, m);
  for (Index p = 0; p < m; ++p) {
    const LinearModel& classifier = model.classifiers[static_cast<std::size_t>(p)];
    const Index label = model.order.at[static_cast<std::size_t>(p)];
    for (Index i = 0; i < n; ++i) {
      const double score = score_row(classifier, augmented.row(i).data(), d + p);
      const int value = label_from_score(score, threshold);
      augmented(i, d + p) = static_cast<double>(value);
      out(i, label) = value;
    }
  }
  return out;
}

LabelMatrix predict_stacking(const StackingModel& model, const Matrix& features,
                             double threshold) {
  check_threshold(threshold);
  check_feature_dim(model.feature_dim, features.cols(), "predict_stacking");
  const Index n = features.rows();
  const Index d = model.feature_dim;
  const Index m = model.label_dim();

  RowMajorMatrix augmented(n, d + m);
  augmented.leftCols(d) = features;
  for (Index j = 0; j < m; ++j) {
    const LinearModel& level1_model =
        model.level1.classifiers[static_cast<std::size_t>(j)];
    for (Index i = 0; i < n; ++i) {
      const double score = score_row(level1_model, augmented.row(i).data(), d);
      augmented(i, d + j) =
          static_cast<double>(label_from_score(score, kFixedDecisionThreshold));
    }
  }
  LabelMatrix out(n, m);
  for (Index j = 0; j < m; ++j) {
    const LinearModel& level2_model = model.level2[static_cast<std::size_t>(j)];
    for (Index i = 0; i < n; ++i) {
      const double score = score_row(level2_model, augmented.row(i).data(), d + m);
      out(i, j) = label_from_score(score, threshold);
    }
  }
  return out;
}

LabelMatrix predict_ecc(const EnsembleModel& model, const Matrix& features) {
  if (model.members.empty()) {
    throw std::invalid_argument("predict_ecc: ensemble has no members");
  }
  const Index n = features.rows();
  const Index m = model.members.front().label_dim();
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> votes =
      Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(n, m);
  for (const ChainModel& member : model.members) {
    votes += predict_chain(member, features, kFixedDecisionThreshold);
  }
  const double k = static_cast<double>(model.members.size());
  LabelMatrix out(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      out(i, j) = (static_cast<double>(votes(i, j)) / k >= model.threshold) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace mlcc
