#include <cmath>
#include <random>

#include "doctest.h"

#include "eel/baselines.hpp"
#include "eel/fitness.hpp"
#include "oracles.hpp"

using namespace eel;

TEST_CASE("one LMS step moves toward the target") {
  Hyperplane h{{0.0}, 0.0};
  const double eta = 0.1;
  const double a = lms_update(h, std::vector<double>{1.0}, 1.0, eta);
  CHECK(a == 0.0);
  CHECK(h.weights[0] == doctest::Approx(2 * eta));
  CHECK(h.bias == doctest::Approx(-2 * eta));
  CHECK(activation(h, std::vector<double>{1.0}) == doctest::Approx(4 * eta));

  Hyperplane v{{0.0}, 0.0};
  lms_update(v, std::vector<double>{1.0}, 1.0, eta, LmsSign::verbatim);
  CHECK(activation(v, std::vector<double>{1.0}) == doctest::Approx(-4 * eta));
}

TEST_CASE("LMS reduces training RMS and is deterministic") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const auto data = rep % 3 == 2 ? oracle::random_dataset(rng, 80, 4, 3)
                                   : oracle::linear_dataset(rng, 80, 4, 0.1);
    LMSConfig cfg;
    cfg.max_epochs = 300;
    Rng a(5), b(5);
    const auto m = lms_train(data, cfg, a);
    CHECK(m.final_rms <= m.initial_rms);
    CHECK(m.rms_trace.size() == data.classes() - 1);
    CHECK(lms_train(data, cfg, b).classifier == m.classifier);
  }
}

TEST_CASE("LMS with a constant target drives activations toward it") {
  const Dataset data({0.2, -0.4, 0.9, 0.1, -0.7, 0.3}, 1, {1, 1, 1, 1, 1, 1}, 2);
  LMSConfig cfg;
  Rng rng(2);
  const auto m = lms_train(data, cfg, rng);
  CHECK(m.final_rms < m.initial_rms);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(activation(m.classifier.planes()[0], data.row(i)) == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("LMS learns a linear concept") {
  std::mt19937_64 rng(4);
  const auto data = oracle::linear_dataset(rng, 200, 3);
  Rng r(1);
  const auto m = lms_train(data, LMSConfig{}, r);
  CHECK(error_rate(predict_all(m.classifier, data), data.labels()) < 0.1);
}

TEST_CASE("weighted vote") {
  DecisionStump to0{0, kInf, StumpOp::less, 0, 1};
  DecisionStump to1{0, kInf, StumpOp::less, 1, 0};
  const std::vector<double> x{0.0};
  CHECK(weighted_vote({{to1}, {0.5}}, x, 2) == 1);
  CHECK(weighted_vote({{to0, to1}, {1.0, 2.0}}, x, 2) == 1);
  CHECK(weighted_vote({{to1, to0}, {1.0, 1.0}}, x, 2) == 0);
  CHECK_THROWS(weighted_vote({}, x, 2));
}

TEST_CASE("AdaBoost reweighting leaves each round's stump at error one half") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const auto data = oracle::random_dataset(rng, 30, 3, 2 + rep % 2);
    BoostConfig cfg;
    cfg.max_rounds = 25;
    std::size_t rounds = 0;
    adaboost_train(data, cfg, [&](const BoostRound& r) {
      ++rounds;
      if (r.error >= 0.5 || r.error <= kBoostErrorFloor) return;
      double wrong = 0.0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        wrong += r.stump.predict(data.row(i)) != data.label(i) ? r.weights_after[i] : 0.0;
      }
      CHECK(std::abs(wrong - 0.5) <= 1e-9);
      CHECK(r.alpha == doctest::Approx(std::log((1 - r.error) / r.error)));
    });
    CHECK(rounds >= 1);
  }
}

TEST_CASE("AdaBoost fits separable one-dimensional data and stops on a perfect stump") {
  const Dataset data({0.1, 0.2, 0.3, 0.7, 0.8}, 1, {0, 0, 0, 1, 1}, 2);
  const auto r = adaboost_train(data, BoostConfig{});
  CHECK(r.model.size() == 1);
  CHECK(r.model.alphas[0] == doctest::Approx(std::log((1 - 1e-12) / 1e-12)));
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(weighted_vote(r.model, data.row(i), 2) == data.label(i));
  }
}

TEST_CASE("AdaBoost on an unlearnable first round keeps one stump") {
  // Identical features with balanced labels: no stump beats one half.
  const Dataset data({1.0, 1.0, 1.0, 1.0}, 1, {0, 1, 0, 1}, 2);
  const auto r = adaboost_train(data, BoostConfig{});
  CHECK(r.weak_first_round);
  CHECK(r.model.size() == 1);
  CHECK(r.model.alphas[0] > 0.0);
  CHECK(r.model.alphas[0] < 1e-9);
}

TEST_CASE("AdaBoost drives bcw training error to zero") {
  const auto data = load_csv(EEL_DATA_DIR "/bcw.csv");
  const auto r = adaboost_train(apply_normalizer(fit_normalizer(data), data), BoostConfig{});
  const std::size_t k = data.classes();
  const double err = error_rate([&](std::span<const double> x) { return weighted_vote(r.model, x, k); },
                                apply_normalizer(fit_normalizer(data), data));
  CHECK(err < 0.01);
}
