#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "eel/dataset.hpp"

namespace eel {

/// Flat real genome: d+1 genes for a binary classifier, 2d+2 for ternary.
using Genome = std::vector<double>;

/// h(x) = <w, x> - b.
struct Hyperplane {
  std::vector<double> weights;
  double bias = 0.0;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

double activation(const Hyperplane& h, std::span<const double> x);

/// Binary (one plane) or ternary (two planes) linear classifier.
///
/// Binary: class 1 iff activation > 0. Ternary: plane 0 separates class 0
/// from {1, 2}, plane 1 separates class 1 from {0, 2}; when both planes fire
/// the larger activation wins, ties going to class 0.
class LinearClassifier {
 public:
  LinearClassifier() = default;

  static LinearClassifier binary(Hyperplane plane);
  static LinearClassifier ternary(Hyperplane class0, Hyperplane class1);

  std::size_t classes() const noexcept { return planes_.size() == 1 ? 2 : 3; }
  std::size_t features() const noexcept {
    return planes_.empty() ? 0 : planes_.front().weights.size();
  }
  const std::vector<Hyperplane>& planes() const noexcept { return planes_; }

  friend bool operator==(const LinearClassifier&, const LinearClassifier&) = default;

 private:
  explicit LinearClassifier(std::vector<Hyperplane> planes) : planes_(std::move(planes)) {}
  std::vector<Hyperplane> planes_;
};

/// Class chosen by the ternary rule from the two plane activations.
ClassIndex ternary_decision(double s0, double s1) noexcept;

ClassIndex predict(const LinearClassifier& c, std::span<const double> x);

/// Predictions for every example, computed with the batch kernels.
Predictions predict_all(const LinearClassifier& c, const Dataset& data);

std::size_t genome_length(std::size_t classes, std::size_t features);

/// Binary: w = g[0..d), b = g[d]. Ternary: plane 0 from g[0..d+1), plane 1
/// from g[d+1..2d+2). Throws std::invalid_argument on a length mismatch or K
/// outside {2, 3}.
LinearClassifier decode(std::span<const double> genome, std::size_t classes,
                        std::size_t features);
Genome encode(const LinearClassifier& c);

enum class StumpOp { less, greater };

/// One-feature threshold rule: `x[feature] op threshold` selects
/// class_if_true, anything else class_if_false. Thresholds may be +/-inf.
struct DecisionStump {
  std::size_t feature = 0;
  double threshold = 0.0;
  StumpOp op = StumpOp::less;
  ClassIndex class_if_true = 0;
  ClassIndex class_if_false = 1;

  ClassIndex predict(std::span<const double> x) const noexcept {
    const double v = x[feature];
    const bool fires = op == StumpOp::less ? v < threshold : v > threshold;
    return fires ? class_if_true : class_if_false;
  }

  friend bool operator==(const DecisionStump&, const DecisionStump&) = default;
};

double stump_weighted_accuracy(const DecisionStump& stump, const Dataset& data,
                               std::span<const double> weights);

/// Exhaustive weighted-accuracy maximisation over features, thresholds
/// (-inf, midpoints between consecutive distinct values, +inf), both operators
/// and every ordered pair of distinct classes. The first maximum in
/// (feature, threshold, op, class pair) order wins.
DecisionStump train_stump(const Dataset& data, std::span<const double> weights);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace eel
