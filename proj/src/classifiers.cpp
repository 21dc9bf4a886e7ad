#include "eel/classifiers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "eel/kernels.hpp"

namespace eel {

double activation(const Hyperplane& h, std::span<const double> x) {
  if (x.size() != h.weights.size()) {
    throw std::invalid_argument("activation: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc = acc + h.weights[j] * x[j];
  }
  return acc - h.bias;
}

LinearClassifier LinearClassifier::binary(Hyperplane plane) {
  return LinearClassifier({std::move(plane)});
}

LinearClassifier LinearClassifier::ternary(Hyperplane class0, Hyperplane class1) {
  if (class0.weights.size() != class1.weights.size()) {
    throw std::invalid_argument("ternary classifier: planes differ in dimension");
  }
  return LinearClassifier({std::move(class0), std::move(class1)});
}

ClassIndex ternary_decision(double s0, double s1) noexcept {
  const bool first = s0 > 0.0;
  const bool second = s1 > 0.0;
  if (first && second) {
    return s1 > s0 ? 1 : 0;
  }
  if (first) {
    return 0;
  }
  if (second) {
    return 1;
  }
  return 2;
}

ClassIndex predict(const LinearClassifier& c, std::span<const double> x) {
  const auto& planes = c.planes();
  if (planes.empty()) {
    throw std::invalid_argument("predict: empty classifier");
  }
  if (planes.size() == 1) {
    return activation(planes[0], x) > 0.0 ? 1 : 0;
  }
  return ternary_decision(activation(planes[0], x), activation(planes[1], x));
}

Predictions predict_all(const LinearClassifier& c, const Dataset& data) {
  const auto& planes = c.planes();
  if (planes.empty() || c.features() != data.features()) {
    throw std::invalid_argument("predict_all: dimension mismatch");
  }
  const std::size_t n = data.size();
  Predictions out(n);
  std::vector<double> s0(n);
  kernels::activations(planes[0].weights, planes[0].bias, data.columns(), s0);
  if (planes.size() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = s0[i] > 0.0 ? 1 : 0;
    }
    return out;
  }
  std::vector<double> s1(n);
  kernels::activations(planes[1].weights, planes[1].bias, data.columns(), s1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ternary_decision(s0[i], s1[i]);
  }
  return out;
}

std::size_t genome_length(std::size_t classes, std::size_t features) {
  if (classes == 2) {
    return features + 1;
  }
  if (classes == 3) {
    return 2 * features + 2;
  }
  throw std::invalid_argument("genome_length: only 2 or 3 classes are supported");
}

LinearClassifier decode(std::span<const double> genome, std::size_t classes,
                        std::size_t features) {
  if (genome.size() != genome_length(classes, features)) {
    throw std::invalid_argument("decode: genome length does not match K and d");
  }
  auto plane = [&](std::size_t offset) {
    return Hyperplane{{genome.begin() + static_cast<std::ptrdiff_t>(offset),
                       genome.begin() + static_cast<std::ptrdiff_t>(offset + features)},
                      genome[offset + features]};
  };
  if (classes == 2) {
    return LinearClassifier::binary(plane(0));
  }
  return LinearClassifier::ternary(plane(0), plane(features + 1));
}

Genome encode(const LinearClassifier& c) {
  Genome g;
  for (const auto& p : c.planes()) {
    g.insert(g.end(), p.weights.begin(), p.weights.end());
    g.push_back(p.bias);
  }
  return g;
}

double stump_weighted_accuracy(const DecisionStump& stump, const Dataset& data,
                               std::span<const double> weights) {
  double correct = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += weights[i];
    if (stump.predict(data.row(i)) == data.label(i)) {
      correct += weights[i];
    }
  }
  return total > 0.0 ? correct / total : 0.0;
}

DecisionStump train_stump(const Dataset& data, std::span<const double> weights) {
  const std::size_t n = data.size();
  const std::size_t classes = data.classes();
  if (n == 0) {
    throw std::invalid_argument("train_stump: empty data");
  }
  if (weights.size() != n) {
    throw std::invalid_argument("train_stump: weight count does not match data");
  }
  double total = 0.0;
  std::vector<double> class_total(classes, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0)) {
      throw std::invalid_argument("train_stump: negative weight");
    }
    total += weights[i];
    class_total[static_cast<std::size_t>(data.label(i))] += weights[i];
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("train_stump: weights sum to zero");
  }

  DecisionStump best;
  double best_score = -1.0;
  std::vector<double> left(classes);
  std::vector<double> right(classes);
  std::vector<std::size_t> order(n);

  // Score every ordered class pair for the current split; left holds x < thr.
  auto consider = [&](std::size_t feature, double threshold) {
    for (std::size_t c = 0; c < classes; ++c) {
      right[c] = class_total[c] - left[c];
    }
    for (StumpOp op : {StumpOp::less, StumpOp::greater}) {
      const auto& fired = op == StumpOp::less ? left : right;
      const auto& other = op == StumpOp::less ? right : left;
      for (std::size_t a = 0; a < classes; ++a) {
        for (std::size_t b = 0; b < classes; ++b) {
          if (a == b) {
            continue;
          }
          const double score = fired[a] + other[b];
          if (score > best_score) {
            best_score = score;
            best = {feature, threshold, op, static_cast<ClassIndex>(a),
                    static_cast<ClassIndex>(b)};
          }
        }
      }
    }
  };

  for (std::size_t f = 0; f < data.features(); ++f) {
    const auto col = data.column(f);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
    std::fill(left.begin(), left.end(), 0.0);
    consider(f, -kInf);
    std::size_t i = 0;
    while (i < n) {
      const double value = col[order[i]];
      while (i < n && col[order[i]] == value) {
        left[static_cast<std::size_t>(data.label(order[i]))] += weights[order[i]];
        ++i;
      }
      if (i < n) {
        consider(f, 0.5 * (value + col[order[i]]));
      }
    }
    consider(f, kInf);
  }
  return best;
}

}  // namespace eel
