#pragma once

#include <cstdint>
#include <filesystem>

#include "mlcc/dataset.hpp"

namespace mlcc {

/// Position of the label block inside an ARFF attribute list.
enum class LabelPosition { kFront, kBack };

/// Canonical dataset format: comma-separated values, '.' decimal separator,
/// '\n' rows, optional header (auto-detected: first line with a non-numeric
/// field). Each row holds d numeric features followed by m binary labels.
/// Malformed rows are rejected with the offending line number.
Dataset load_csv(const std::filesystem::path& path, int label_count);

/// Inverse of load_csv; numeric values are written with shortest round-trip
/// precision so save followed by load reproduces every value exactly.
void save_csv(const Dataset& data, const std::filesystem::path& path,
              bool header = false);

/// Dense ARFF subset: numeric attributes plus {0,1} nominal attributes.
/// The m label attributes sit at the declared end (front or back). String
/// and date attributes, missing values and sparse instance lines are
/// rejected with descriptive errors.
Dataset load_arff(const std::filesystem::path& path, int label_count,
                  LabelPosition labels_at);

struct DatasetStats {
  Index n = 0;
  Index d = 0;
  Index m = 0;
  double cardinality = 0.0;        // mean number of relevant labels per row
  std::int64_t distinct_subsets = 0;
  double observation_rate = 0.0;   // distinct_subsets * 2^-m
};

DatasetStats stats(const Dataset& data);

}  // namespace mlcc
