#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace eel {

using ClassIndex = std::int32_t;
using Predictions = std::vector<ClassIndex>;

/// Classification data: n examples of d real features with labels in
/// {0..K-1}. Rows are kept both row-major (per-example access) and
/// feature-major (batch kernels). Immutable after construction.
class Dataset {
 public:
  Dataset() = default;

  /// `values` is row-major n x d. Throws std::invalid_argument on a shape
  /// mismatch, a non-finite value or a label outside {0..classes-1}.
  Dataset(std::vector<double> values, std::size_t features,
          std::vector<ClassIndex> labels, std::size_t classes,
          std::vector<std::string> class_names = {});

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t features() const noexcept { return features_; }
  std::size_t classes() const noexcept { return classes_; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {rows_.data() + i * features_, features_};
  }
  std::span<const double> column(std::size_t j) const {
    return {columns_.data() + j * size(), size()};
  }
  /// All columns back to back (feature-major), as consumed by kernels.
  std::span<const double> columns() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return rows_; }
  double at(std::size_t i, std::size_t j) const { return rows_[i * features_ + j]; }

  std::span<const ClassIndex> labels() const noexcept { return labels_; }
  ClassIndex label(std::size_t i) const { return labels_[i]; }

  /// Original label text for each class index (first-appearance order).
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  /// Examples `indices` in the given order; keeps K and the class names.
  Dataset subset(std::span<const std::size_t> indices) const;

  std::vector<std::size_t> class_counts() const;

 private:
  std::vector<double> rows_;
  std::vector<double> columns_;
  std::vector<ClassIndex> labels_;
  std::size_t features_ = 0;
  std::size_t classes_ = 0;
  std::vector<std::string> class_names_;
};

enum class MissingPolicy { drop_rows };

struct CsvOptions {
  /// Column holding the class label; negative values count from the end
  /// (-1 is the last column).
  int label_column = -1;
  MissingPolicy missing = MissingPolicy::drop_rows;
};

/// Parses comma-separated data. Line 1 is a header iff one of its feature
/// cells fails to parse as a number. Labels are re-indexed densely in order of
/// first appearance; row order is preserved. Rows with a blank or non-numeric
/// feature cell, or a blank label, are dropped.
Dataset parse_csv(std::istream& in, const CsvOptions& options = {});
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Per-feature affine map onto [-1, 1], fitted on one dataset.
struct NormParams {
  std::vector<double> min;
  std::vector<double> max;

  /// 2 (x - min) / (max - min) - 1, or 0 for a constant feature.
  double apply(std::size_t feature, double x) const;
};

NormParams fit_normalizer(const Dataset& train);

/// Values outside the fitted range map outside [-1, 1]; nothing is clipped.
Dataset apply_normalizer(const NormParams& params, const Dataset& data);

struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::size_t> assignments;
  std::uint64_t seed = 0;

  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

/// Shuffles each class with a generator seeded by `seed`, then deals the
/// examples to folds round-robin. The dealing position carries over from one
/// class to the next, so fold sizes differ by at most one overall as well as
/// per class. Throws std::invalid_argument if k < 2 or a class has fewer
/// than k members.
FoldPlan stratified_kfold(const Dataset& data, std::size_t k, std::uint64_t seed);

}  // namespace eel
