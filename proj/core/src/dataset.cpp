#include "mlcc/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlcc {

Dataset make_dataset(Matrix features, LabelMatrix labels,
                     std::vector<std::string> label_names) {
  const Index n = features.rows();
  const Index d = features.cols();
  const Index m = labels.cols();
  if (n < 1 || d < 1 || m < 1) {
    throw std::invalid_argument("dataset requires n >= 1, d >= 1, m >= 1 (got n=" +
                                std::to_string(n) + ", d=" + std::to_string(d) +
                                ", m=" + std::to_string(m) + ")");
  }
  if (labels.rows() != n) {
    throw std::invalid_argument("feature rows (" + std::to_string(n) +
                                ") and label rows (" + std::to_string(labels.rows()) +
                                ") disagree");
  }
  if (!features.allFinite()) {
    throw std::invalid_argument("features contain non-finite values");
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const int v = labels(i, j);
      if (v != 0 && v != 1) {
        throw std::invalid_argument("label value " + std::to_string(v) +
                                    " at row " + std::to_string(i) + ", column " +
                                    std::to_string(j) + " is not 0 or 1");
      }
    }
  }
  if (label_names.empty()) {
    label_names.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
      label_names.push_back("label_" + std::to_string(j));
    }
  }
  if (static_cast<Index>(label_names.size()) != m) {
    throw std::invalid_argument("label_names size does not match label count");
  }
  return Dataset{std::move(features), std::move(labels), std::move(label_names)};
}

Vector label_column(const LabelMatrix& labels, Index j) {
  Vector out(labels.rows());
  for (Index i = 0; i < labels.rows(); ++i) {
    out[i] = static_cast<double>(labels(i, j));
  }
  return out;
}

Dataset subset_rows(const Dataset& data, std::span<const Index> rows) {
  const Index n = static_cast<Index>(rows.size());
  Matrix features(n, data.feature_dim());
  LabelMatrix labels(n, data.label_dim());
  for (Index i = 0; i < n; ++i) {
    features.row(i) = data.features.row(rows[static_cast<std::size_t>(i)]);
    labels.row(i) = data.labels.row(rows[static_cast<std::size_t>(i)]);
  }
  Dataset out;
  out.features = std::move(features);
  out.labels = std::move(labels);
  out.label_names = data.label_names;
  return out;
}

}  // namespace mlcc
