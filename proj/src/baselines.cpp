#include "eel/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace eel {

double lms_update(Hyperplane& plane, std::span<const double> x, double target, double eta,
                  LmsSign sign) {
  const double a = activation(plane, x);
  const double delta = sign == LmsSign::corrected ? 2.0 * eta * (target - a)
                                                  : 2.0 * eta * (a - target);
  for (std::size_t j = 0; j < x.size(); ++j) {
    plane.weights[j] += delta * x[j];
  }
  plane.bias -= delta;
  return a;
}

double lms_rms(const Hyperplane& plane, const Dataset& data, std::span<const double> targets) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = activation(plane, data.row(i)) - targets[i];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(data.size()));
}

namespace {

Hyperplane train_plane(const Dataset& train, std::span<const double> targets,
                       const LMSConfig& cfg, Rng& rng, std::vector<double>& trace) {
  const std::size_t n = train.size();
  Hyperplane plane{std::vector<double>(train.features(), 0.0), 0.0};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double previous = 0.0;
  for (std::size_t t = 1; t <= cfg.max_epochs; ++t) {
    const double eta = 1.0 / (static_cast<double>(n) * std::sqrt(static_cast<double>(t)));
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0.0;
    for (std::size_t i : order) {
      const double a = lms_update(plane, train.row(i), targets[i], eta, cfg.sign);
      sum += (a - targets[i]) * (a - targets[i]);
    }
    const double rms = std::sqrt(sum / static_cast<double>(n));
    trace.push_back(rms);
    if (t > 1 && std::abs(rms - previous) < cfg.stop_epsilon) {
      break;
    }
    previous = rms;
  }
  return plane;
}

}  // namespace

LmsModel lms_train(const Dataset& train, const LMSConfig& cfg, Rng& rng) {
  if (train.empty()) {
    throw std::invalid_argument("lms: empty data");
  }
  if (cfg.max_epochs < 1 || !(cfg.stop_epsilon > 0.0)) {
    throw std::invalid_argument("lms: need max_epochs >= 1 and epsilon > 0");
  }
  const std::size_t planes = train.classes() == 2 ? 1 : 2;
  if (train.classes() > 3) {
    throw std::invalid_argument("lms: only 2 or 3 classes are supported");
  }
  LmsModel model;
  std::vector<Hyperplane> trained;
  const Hyperplane zero{std::vector<double>(train.features(), 0.0), 0.0};
  for (std::size_t p = 0; p < planes; ++p) {
    // Binary: +1 for class 1. Ternary plane p: +1 for class p (one-vs-rest).
    const ClassIndex positive = planes == 1 ? 1 : static_cast<ClassIndex>(p);
    std::vector<double> targets(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      targets[i] = train.label(i) == positive ? 1.0 : -1.0;
    }
    model.rms_trace.emplace_back();
    trained.push_back(train_plane(train, targets, cfg, rng, model.rms_trace.back()));
    model.initial_rms += lms_rms(zero, train, targets);
    model.final_rms += lms_rms(trained.back(), train, targets);
  }
  model.classifier = planes == 1 ? LinearClassifier::binary(std::move(trained[0]))
                                 : LinearClassifier::ternary(std::move(trained[0]),
                                                             std::move(trained[1]));
  return model;
}

ClassIndex weighted_vote(const WeightedEnsemble& e, std::span<const double> x,
                         std::size_t classes) {
  if (e.stumps.empty()) {
    throw std::invalid_argument("weighted_vote: empty ensemble");
  }
  std::vector<double> score(classes, 0.0);
  for (std::size_t t = 0; t < e.stumps.size(); ++t) {
    score[static_cast<std::size_t>(e.stumps[t].predict(x))] += e.alphas[t];
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < classes; ++k) {
    if (score[k] > score[best]) {
      best = k;
    }
  }
  return static_cast<ClassIndex>(best);
}

BoostResult adaboost_train(const Dataset& train, const BoostConfig& cfg,
                           const std::function<void(const BoostRound&)>& observer) {
  const std::size_t n = train.size();
  if (n == 0) {
    throw std::invalid_argument("adaboost: empty data");
  }
  if (cfg.max_rounds < 1) {
    throw std::invalid_argument("adaboost: max_rounds must be at least 1");
  }
  BoostResult result;
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  std::vector<bool> wrong(n);

  for (std::size_t round = 0; round < cfg.max_rounds; ++round) {
    const DecisionStump stump = train_stump(train, weights);
    double error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wrong[i] = stump.predict(train.row(i)) != train.label(i);
      if (wrong[i]) {
        error += weights[i];
      }
    }
    const double measured = error;
    bool last = false;
    if (error >= 0.5) {
      if (round > 0) {
        break;
      }
      std::cerr << "adaboost: first stump has weighted error " << error
                << " >= 0.5; keeping it alone\n";
      result.weak_first_round = true;
      error = 0.5 - kBoostErrorFloor;
      last = true;
    } else if (error <= 0.0) {
      error = kBoostErrorFloor;
      last = true;
    }
    const double alpha = std::log((1.0 - error) / error);
    result.model.stumps.push_back(stump);
    result.model.alphas.push_back(alpha);

    const double boost = std::exp(alpha);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (wrong[i]) {
        weights[i] *= boost;
      }
      total += weights[i];
    }
    for (double& w : weights) {
      w /= total;
    }
    if (observer) {
      observer(BoostRound{round, result.model.stumps.back(), measured, alpha, weights});
    }
    if (last) {
      break;
    }
  }
  return result;
}

}  // namespace eel
