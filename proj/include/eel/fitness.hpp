#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eel/classifiers.hpp"
#include "eel/dataset.hpp"

namespace eel {

enum class LossKind { step };

/// Cost of predicting `predicted` when the truth is `truth`.
struct LossFn {
  LossKind kind = LossKind::step;

  double operator()(ClassIndex predicted, ClassIndex truth) const noexcept {
    return predicted == truth ? 0.0 : 1.0;
  }
};

/// Example hardness: mean loss of a reference set on each example.
struct WeightVector {
  std::vector<double> values;
  std::size_t reference_count = 0;
};

struct FitnessParams {
  double gamma = 2.0;
  LossFn loss;
};

/// w_i = (1/|Q|) sum_{h in Q} loss(h(x_i), y_i), recomputed from scratch.
/// Each reference is given by its prediction vector on the examples.
/// Throws std::invalid_argument for an empty reference set.
WeightVector example_weights(std::span<const std::span<const ClassIndex>> references,
                             std::span<const ClassIndex> labels, const LossFn& loss = {});
WeightVector example_weights(std::span<const LinearClassifier> references,
                             const Dataset& data, const LossFn& loss = {});

/// w_i^gamma for every example, with 0^0 = 1.
std::vector<double> hardness_powers(const WeightVector& w, double gamma);

/// Sum of w_i^gamma over the examples classified correctly.
double diversity_fitness(std::span<const ClassIndex> predictions,
                         std::span<const ClassIndex> labels,
                         std::span<const double> powered_weights);
double diversity_fitness(const LinearClassifier& h, const Dataset& data,
                         const WeightVector& w, const FitnessParams& params);

std::size_t misclassified(std::span<const ClassIndex> predictions,
                          std::span<const ClassIndex> labels);

/// Fraction of misclassified examples. Throws for empty data.
double error_rate(std::span<const ClassIndex> predictions, std::span<const ClassIndex> labels);

/// Error rate of any decision function `decide(std::span<const double>) -> ClassIndex`.
template <typename Decide>
double error_rate(const Decide& decide, const Dataset& data) {
  Predictions predictions(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    predictions[i] = decide(data.row(i));
  }
  return error_rate(predictions, data.labels());
}

}  // namespace eel
