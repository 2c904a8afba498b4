#include "mlcc/linear.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlcc {

namespace {

// log(1 + exp(s)) without overflow for large |s|.
double softplus(double s) {
  if (s > 0.0) return s + std::log1p(std::exp(-s));
  return std::log1p(std::exp(s));
}

// Mean cross-entropy from raw scores: sum_i softplus(s_i) - y_i s_i.
double data_loss(const Vector& scores, const Vector& targets) {
  double total = 0.0;
  for (Index i = 0; i < scores.size(); ++i) {
    total += softplus(scores[i]) - targets[i] * scores[i];
  }
  return total / static_cast<double>(scores.size());
}

void check_dims(const LinearModel& model, Index dim, const char* what) {
  if (model.weights.size() != dim) {
    throw std::invalid_argument(std::string(what) + ": input dimension " +
                                std::to_string(dim) + " does not match model dimension " +
                                std::to_string(model.weights.size()));
  }
}

}  // namespace

BinaryProblem make_binary_problem(Matrix features, Vector targets) {
  if (features.rows() < 1 || features.cols() < 1) {
    throw std::invalid_argument("binary problem requires n >= 1 and d >= 1");
  }
  if (targets.size() != features.rows()) {
    throw std::invalid_argument("target count does not match feature rows");
  }
  if (!features.allFinite()) {
    throw std::invalid_argument("binary problem features contain non-finite values");
  }
  for (Index i = 0; i < targets.size(); ++i) {
    if (targets[i] != 0.0 && targets[i] != 1.0) {
      throw std::invalid_argument("target at row " + std::to_string(i) +
                                  " is not exactly 0 or 1");
    }
  }
  return BinaryProblem{std::move(features), std::move(targets)};
}

std::string step_rule_description(const OptimizerConfig& config) {
  return "backtracking-armijo(c=" + std::to_string(config.armijo_c) +
         ",shrink=" + std::to_string(config.backtrack_factor) + ")";
}

double logistic(double score) {
  if (score >= 0.0) {
    return 1.0 / (1.0 + std::exp(-score));
  }
  const double e = std::exp(score);
  return e / (1.0 + e);
}

LinearModel train_binary(const BinaryProblem& problem,
                         const OptimizerConfig& config) {
  if (problem.features.rows() < 1 || problem.features.cols() < 1) {
    throw std::invalid_argument("train_binary: empty problem");
  }
  if (problem.targets.size() != problem.features.rows()) {
    throw std::invalid_argument("train_binary: target count does not match rows");
  }
  if (!problem.features.allFinite() || !problem.targets.allFinite()) {
    throw std::invalid_argument("train_binary: non-finite inputs");
  }
  if (config.max_iterations < 1 || config.gradient_tolerance <= 0.0 ||
      config.regularization < 0.0) {
    throw std::invalid_argument("train_binary: invalid optimizer configuration");
  }

  const Matrix& X = problem.features;
  const Vector& y = problem.targets;
  const Index n = X.rows();
  const Index d = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double lambda = config.regularization;

  Vector w = Vector::Zero(d);
  double b = 0.0;
  Vector scores = Vector::Zero(n);  // X*w + b, maintained incrementally

  double objective = data_loss(scores, y);  // w = 0: no penalty term
  double step = config.initial_step;
  double gradient_norm = 0.0;
  int iterations = 0;

  Vector residual(n), grad_w(d), direction_scores(n);
  const auto refresh_gradient = [&](double& grad_b_out) {
    for (Index i = 0; i < n; ++i) residual[i] = logistic(scores[i]) - y[i];
    grad_w.noalias() = X.transpose() * residual * inv_n;
    grad_w += lambda * w;
    grad_b_out = residual.sum() * inv_n;
    gradient_norm = std::sqrt(grad_w.squaredNorm() + grad_b_out * grad_b_out);
  };

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    double grad_b = 0.0;
    refresh_gradient(grad_b);
    const double grad_sq = gradient_norm * gradient_norm;
    if (gradient_norm < config.gradient_tolerance) break;

    // Scores move linearly along the descent direction, so every line-search
    // trial costs O(n) instead of a matrix product.
    direction_scores.noalias() = X * grad_w;
    const double w_dot_g = w.dot(grad_w);
    const double g_sq = grad_w.squaredNorm();
    const double w_sq = w.squaredNorm();

    double alpha = step;
    bool accepted = false;
    double trial_objective = objective;
    while (alpha > 1e-20) {
      double trial = 0.0;
      for (Index i = 0; i < n; ++i) {
        const double s = scores[i] - alpha * (direction_scores[i] + grad_b);
        trial += softplus(s) - y[i] * s;
      }
      trial *= inv_n;
      trial += 0.5 * lambda * (w_sq - 2.0 * alpha * w_dot_g + alpha * alpha * g_sq);
      if (trial <= objective - config.armijo_c * alpha * grad_sq) {
        trial_objective = trial;
        accepted = true;
        break;
      }
      alpha *= config.backtrack_factor;
    }
    if (!accepted) break;  // no representable step makes progress

    w -= alpha * grad_w;
    b -= alpha * grad_b;
    scores -= alpha * (direction_scores.array() + grad_b).matrix();
    objective = trial_objective;
    step = alpha * 2.0;  // try a larger step next round
    iterations = iter + 1;
    if (config.iteration_callback) config.iteration_callback(iterations, objective);
  }

  {
    // Meta reports the gradient at the final iterate.
    double grad_b = 0.0;
    refresh_gradient(grad_b);
  }

  LinearModel model;
  model.weights = std::move(w);
  model.bias = b;
  model.regularization = lambda;
  model.meta = TrainingMeta{iterations, objective, gradient_norm};
  return model;
}

double decision_score(const LinearModel& model, const Vector& x) {
  check_dims(model, x.size(), "decision_score");
  return model.bias + model.weights.dot(x);
}

double predict_proba(const LinearModel& model, const Vector& x) {
  return logistic(decision_score(model, x));
}

int predict_label(const LinearModel& model, const Vector& x, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0,1)");
  }
  return predict_proba(model, x) >= threshold ? 1 : 0;
}

Vector predict_scores(const LinearModel& model, const Matrix& features) {
  check_dims(model, features.cols(), "predict_scores");
  Vector scores = features * model.weights;
  scores.array() += model.bias;
  return scores;
}

std::pair<double, Vector> loss_and_gradient(const LinearModel& model,
                                            const BinaryProblem& problem) {
  check_dims(model, problem.features.cols(), "loss_and_gradient");
  const Matrix& X = problem.features;
  const Vector& y = problem.targets;
  const Index n = X.rows();
  const Index d = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  Vector scores = predict_scores(model, X);
  const double loss = data_loss(scores, y) +
                      0.5 * model.regularization * model.weights.squaredNorm();

  Vector residual(n);
  for (Index i = 0; i < n; ++i) residual[i] = logistic(scores[i]) - y[i];

  Vector gradient(d + 1);
  gradient.head(d).noalias() = X.transpose() * residual * inv_n;
  gradient.head(d) += model.regularization * model.weights;
  gradient[d] = residual.sum() * inv_n;  // bias component, unregularized
  return {loss, std::move(gradient)};
}

}  // namespace mlcc
