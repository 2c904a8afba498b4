#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace mlcc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Binary label matrix. Row-major so a row can be viewed as a contiguous span.
using LabelMatrix =
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using LabelVector = std::vector<int>;

/// A multi-label dataset: n instances with d numeric features and m binary
/// labels. Immutable by convention once built; all learners take it by const
/// reference and never modify it.
struct Dataset {
  Matrix features;                       // n x d
  LabelMatrix labels;                    // n x m, entries in {0,1}
  std::vector<std::string> label_names;  // size m

  Index rows() const { return features.rows(); }
  Index feature_dim() const { return features.cols(); }
  Index label_dim() const { return labels.cols(); }
};

/// Validates invariants (n,d,m >= 1, binary labels, finite features,
/// matching row counts) and fills default label names when none are given.
/// Throws std::invalid_argument on violation.
Dataset make_dataset(Matrix features, LabelMatrix labels,
                     std::vector<std::string> label_names = {});

inline std::span<const int> label_row(const Dataset& data, Index i) {
  return {data.labels.row(i).data(),
          static_cast<std::size_t>(data.labels.cols())};
}

inline std::span<const int> label_row(const LabelMatrix& labels, Index i) {
  return {labels.row(i).data(), static_cast<std::size_t>(labels.cols())};
}

/// Label column j as a 0.0/1.0 vector (binary training targets).
Vector label_column(const LabelMatrix& labels, Index j);

/// Gathers the given rows of a dataset into a new one (fold extraction,
/// bootstrap resampling). Indices may repeat.
Dataset subset_rows(const Dataset& data, std::span<const Index> rows);

}  // namespace mlcc
