#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "eel/classifiers.hpp"
#include "eel/dataset.hpp"
#include "eel/random.hpp"

namespace eel {

/// `corrected` updates along the negative gradient of the squared error;
/// `verbatim` keeps the opposite sign (w += 2 eta (a - y) x), which climbs it.
enum class LmsSign { corrected, verbatim };

struct LMSConfig {
  std::size_t max_epochs = 10000;
  double stop_epsilon = 1e-7;
  LmsSign sign = LmsSign::corrected;
};

struct LmsModel {
  LinearClassifier classifier;
  /// One trace per plane (one for binary, two for ternary): RMS of the
  /// in-epoch activations for epochs 1..T.
  std::vector<std::vector<double>> rms_trace;
  /// Training RMS of the zero initial planes and of the final planes,
  /// summed over planes.
  double initial_rms = 0.0;
  double final_rms = 0.0;
};

/// One stochastic step on example (x, y); returns the activation a computed
/// before the update. Step: delta = 2 eta (y - a) (corrected sign), w += delta x,
/// b -= delta.
double lms_update(Hyperplane& plane, std::span<const double> x, double target, double eta,
                  LmsSign sign = LmsSign::corrected);

/// Training RMS of `plane` against +/-1 targets.
double lms_rms(const Hyperplane& plane, const Dataset& data, std::span<const double> targets);

/// Stochastic LMS with learning rate 1/(n sqrt(t)); epoch t shuffles the data
/// and stops once the RMS changes by less than stop_epsilon. Binary targets are
/// -1 (class 0) / +1 (class 1); three classes train two one-vs-rest planes
/// (class 0, class 1) combined by the ternary rule.
LmsModel lms_train(const Dataset& train, const LMSConfig& cfg, Rng& rng);

struct BoostConfig {
  std::size_t max_rounds = 2000;
};

struct WeightedEnsemble {
  std::vector<DecisionStump> stumps;
  std::vector<double> alphas;

  std::size_t size() const noexcept { return stumps.size(); }
};

/// Class with the largest summed alpha; lowest index on ties. Throws for an
/// empty ensemble.
ClassIndex weighted_vote(const WeightedEnsemble& e, std::span<const double> x,
                         std::size_t classes);

struct BoostRound {
  std::size_t round = 0;
  const DecisionStump& stump;
  /// Weighted error as measured, before any clamping.
  double error = 0.0;
  double alpha = 0.0;
  /// Normalised example weights after this round's update.
  std::span<const double> weights_after;
};

struct BoostResult {
  WeightedEnsemble model;
  /// Set when the first stump already had weighted error >= 0.5.
  bool weak_first_round = false;
};

inline constexpr double kBoostErrorFloor = 1e-12;

/// AdaBoost.M1 over decision stumps. Stops early when a stump reaches error
/// >= 0.5 (the round is dropped, except the first, kept with its error clamped
/// just below 0.5) or error 0 (kept with error clamped to kBoostErrorFloor).
BoostResult adaboost_train(const Dataset& train, const BoostConfig& cfg,
                           const std::function<void(const BoostRound&)>& observer = {});

}  // namespace eel
