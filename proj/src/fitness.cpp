#include "eel/fitness.hpp"

#include <cmath>
#include <stdexcept>

#include "eel/kernels.hpp"

namespace eel {

WeightVector example_weights(std::span<const std::span<const ClassIndex>> references,
                             std::span<const ClassIndex> labels, const LossFn& loss) {
  if (references.empty()) {
    throw std::invalid_argument("example_weights: empty reference set");
  }
  const std::size_t n = labels.size();
  for (const auto& r : references) {
    if (r.size() != n) {
      throw std::invalid_argument("example_weights: prediction length mismatch");
    }
  }
  WeightVector w;
  w.reference_count = references.size();
  w.values.assign(n, 0.0);
  const double scale = 1.0 / static_cast<double>(references.size());
  if (loss.kind == LossKind::step) {
    std::vector<std::int32_t> misses(n, 0);
    for (const auto& r : references) {
      kernels::accumulate_mismatches(r, labels, misses);
    }
    for (std::size_t i = 0; i < n; ++i) {
      w.values[i] = static_cast<double>(misses[i]) * scale;
    }
    return w;
  }
  for (const auto& r : references) {
    for (std::size_t i = 0; i < n; ++i) {
      w.values[i] += loss(r[i], labels[i]);
    }
  }
  for (double& v : w.values) {
    v *= scale;
  }
  return w;
}

WeightVector example_weights(std::span<const LinearClassifier> references,
                             const Dataset& data, const LossFn& loss) {
  std::vector<Predictions> predictions;
  predictions.reserve(references.size());
  for (const auto& h : references) {
    predictions.push_back(predict_all(h, data));
  }
  std::vector<std::span<const ClassIndex>> views(predictions.begin(), predictions.end());
  return example_weights(views, data.labels(), loss);
}

std::vector<double> hardness_powers(const WeightVector& w, double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("fitness: gamma must be nonnegative");
  }
  std::vector<double> powered(w.values.size());
  for (std::size_t i = 0; i < powered.size(); ++i) {
    powered[i] = gamma == 0.0 ? 1.0 : std::pow(w.values[i], gamma);
  }
  return powered;
}

double diversity_fitness(std::span<const ClassIndex> predictions,
                         std::span<const ClassIndex> labels,
                         std::span<const double> powered_weights) {
  if (predictions.size() != labels.size() || powered_weights.size() != labels.size()) {
    throw std::invalid_argument("diversity_fitness: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i]) {
      sum += powered_weights[i];
    }
  }
  return sum;
}

double diversity_fitness(const LinearClassifier& h, const Dataset& data,
                         const WeightVector& w, const FitnessParams& params) {
  const auto predictions = predict_all(h, data);
  const auto powered = hardness_powers(w, params.gamma);
  return diversity_fitness(predictions, data.labels(), powered);
}

std::size_t misclassified(std::span<const ClassIndex> predictions,
                          std::span<const ClassIndex> labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("misclassified: length mismatch");
  }
  return kernels::count_mismatches(predictions, labels);
}

double error_rate(std::span<const ClassIndex> predictions, std::span<const ClassIndex> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("error_rate: empty dataset");
  }
  return static_cast<double>(misclassified(predictions, labels)) /
         static_cast<double>(labels.size());
}

}  // namespace eel
