#pragma once

#include <functional>
#include <string>
#include <utility>

#include "mlcc/dataset.hpp"

namespace mlcc {

/// One binary classification task: n x d features, n targets in {0,1}.
struct BinaryProblem {
  Matrix features;
  Vector targets;
};

/// Validates shapes, finiteness and binary targets; throws on violation.
BinaryProblem make_binary_problem(Matrix features, Vector targets);

struct TrainingMeta {
  int iterations = 0;
  double objective = 0.0;
  double gradient_norm = 0.0;
};

/// L2-regularized logistic regression model. The decision score for x is
/// bias + weights.dot(x); the predicted probability is logistic(score).
struct LinearModel {
  Vector weights;
  double bias = 0.0;
  double regularization = 0.0;  // lambda used during training
  TrainingMeta meta;
};

/// Settings for the deterministic full-batch gradient descent solver with
/// backtracking (Armijo) line search. Training is a pure function of
/// (problem, config): identical inputs give bit-identical models.
struct OptimizerConfig {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-6;
  double regularization = 1e-4;  // L2 strength on weights; bias unregularized
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  /// Observation hook, called after every accepted step with the objective
  /// value. Has no effect on the optimization path.
  std::function<void(int iteration, double objective)> iteration_callback;
};

/// Human-readable descriptor of the step-size policy, for report provenance.
std::string step_rule_description(const OptimizerConfig& config);

/// Minimizes mean cross-entropy + (lambda/2)||w||^2 until the full gradient
/// norm (weights and bias) drops below gradient_tolerance or max_iterations
/// is reached. The objective is non-increasing across iterations.
LinearModel train_binary(const BinaryProblem& problem,
                         const OptimizerConfig& config);

double logistic(double score);
double decision_score(const LinearModel& model, const Vector& x);
double predict_proba(const LinearModel& model, const Vector& x);

/// 1 iff predict_proba(model, x) >= threshold; threshold must be in (0,1).
int predict_label(const LinearModel& model, const Vector& x, double threshold);

/// Decision scores for every row of X (batch form of decision_score).
Vector predict_scores(const LinearModel& model, const Matrix& features);

/// L2-regularized mean cross-entropy and its exact gradient with respect to
/// (weights, bias). Gradient layout: d weight components, then the bias.
/// The bias is not regularized.
std::pair<double, Vector> loss_and_gradient(const LinearModel& model,
                                            const BinaryProblem& problem);

}  // namespace mlcc
