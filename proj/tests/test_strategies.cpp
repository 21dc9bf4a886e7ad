#include <random>

#include "doctest.h"

#include "eel/strategies.hpp"
#include "oracles.hpp"

using namespace eel;

namespace {

EELConfig small_eel(std::uint64_t seed) {
  EELConfig cfg;
  cfg.ga.population_size = 30;
  cfg.ga.max_evaluations = 30 * 15;
  cfg.ga.seed = seed;
  return cfg;
}

// y = [x_0 > 0] with every example at least 0.1 away from the boundary.
Dataset separable(std::uint64_t seed, std::size_t n = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0), v(-1.0, 1.0);
  std::vector<double> values;
  std::vector<ClassIndex> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    values.push_back(pos ? u(rng) : -u(rng));
    values.push_back(v(rng));
    labels.push_back(pos ? 1 : 0);
  }
  return Dataset(std::move(values), 2, std::move(labels), 2);
}

}  // namespace

TEST_CASE("off-eel beats or ties its best final member on training data") {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto data = oracle::random_dataset(rng, 60, 4, seed % 2 ? 3 : 2);
    const auto r = off_eel_run(data, small_eel(seed));
    const auto& best = r.final_population.individuals[r.best_index];
    CHECK(misclassified(majority_vote_all(r.ensemble, data), data.labels()) <=
          misclassified(best.predictions, data.labels()));
    CHECK(r.ensemble.members.front() == decode(best.genome, data.classes(), 4));
  }
}

TEST_CASE("off-eel with a single generation selects from the initial population") {
  std::mt19937_64 rng(2);
  const auto data = oracle::random_dataset(rng, 40, 3, 2);
  auto cfg = small_eel(5);
  cfg.ga.max_evaluations = cfg.ga.population_size;
  cfg.ga.sbx_probability = 0.0;
  cfg.ga.mutation_probability = 0.0;
  const auto r = off_eel_run(data, cfg);
  CHECK(r.final_population.generation == 0);
  CHECK(r.final_population.evaluations == 30);
  CHECK(!r.ensemble.empty());
}

TEST_CASE("on-eel grows by prefixes and never shrinks") {
  std::mt19937_64 rng(3);
  const auto data = oracle::random_dataset(rng, 50, 3, 3);
  std::vector<std::size_t> telemetry_sizes;
  const auto r = on_eel_run(data, small_eel(9), [&](const GenerationStats& s) {
    telemetry_sizes.push_back(s.ensemble_size);
  });
  CHECK(r.sizes.size() == 15);
  CHECK(telemetry_sizes == r.sizes);
  for (std::size_t t = 1; t < r.sizes.size(); ++t) CHECK(r.sizes[t] >= r.sizes[t - 1]);
  CHECK(r.ensemble.size() == r.sizes.back());

  // Prefix property: a shorter budget yields a prefix of the longer run.
  auto shorter = small_eel(9);
  shorter.ga.max_evaluations = 30 * 8;
  const auto s = on_eel_run(data, shorter);
  REQUIRE(s.ensemble.size() <= r.ensemble.size());
  for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
    CHECK(s.ensemble.members[i] == r.ensemble.members[i]);
  }
}

TEST_CASE("on-eel with one generation is a selection seeded by the best initial member") {
  std::mt19937_64 rng(4);
  const auto data = oracle::random_dataset(rng, 40, 2, 2);
  auto cfg = small_eel(11);
  cfg.ga.max_evaluations = cfg.ga.population_size;
  const auto on = on_eel(data, cfg);

  Rng init = make_stream(11, 0);
  const auto pop = init_population(cfg.ga, genome_length(2, 2), init);
  std::vector<LinearClassifier> pool;
  std::size_t best = 0, best_err = data.size() + 1;
  for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
    pool.push_back(decode(pop.individuals[i].genome, 2, 2));
    const auto e = misclassified(predict_all(pool.back(), data), data.labels());
    if (e < best_err) {
      best = i;
      best_err = e;
    }
  }
  const auto sel = ensemble_selection(pool, data, Ensemble{{pool[best]}});
  CHECK(on.members == sel.members);
}

TEST_CASE("strategies are deterministic") {
  std::mt19937_64 rng(5);
  const auto data = oracle::random_dataset(rng, 40, 3, 2);
  CHECK(off_eel(data, small_eel(3)).members == off_eel(data, small_eel(3)).members);
  CHECK(on_eel(data, small_eel(3)).members == on_eel(data, small_eel(3)).members);
  CHECK(ga_single(data, small_eel(3).ga) == ga_single(data, small_eel(3).ga));
}

TEST_CASE("off-eel with gamma 0 reduces to the single GA's last generation") {
  std::mt19937_64 rng(6);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto data = oracle::random_dataset(rng, 50, 3, 2 + seed % 2);
    auto cfg = small_eel(seed);
    cfg.fitness.gamma = 0.0;
    const auto off = off_eel_run(data, cfg);
    const auto ga = ga_single_run(data, cfg.ga);
    CHECK(off.ensemble.members.front() == ga.last_generation_best);
  }
}

TEST_CASE("single GA tracks the best of run") {
  std::mt19937_64 rng(7);
  const auto data = oracle::random_dataset(rng, 60, 3, 2);
  auto cfg = small_eel(2).ga;
  double lowest = 1.0;
  const auto r = ga_single_run(data, cfg, [&](const GenerationStats& s) {
    lowest = std::min(lowest, s.train_error);
  });
  CHECK(r.best_train_error == lowest);
  CHECK(error_rate(predict_all(r.best_of_run, data), data.labels()) == lowest);

  cfg.max_evaluations = cfg.population_size;
  const auto init_only = ga_single_run(data, cfg);
  CHECK(init_only.best_of_run == init_only.last_generation_best);
}

TEST_CASE("single GA separates linearly separable data") {
  GAConfig cfg;
  cfg.population_size = 50;
  cfg.max_evaluations = 50 * 60;
  int solved = 0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    solved += ga_single_run(separable(static_cast<std::uint64_t>(s)), cfg).best_train_error == 0.0;
  }
  CHECK(solved >= 19);
}

TEST_CASE("strategies reject invalid input") {
  const Dataset one({0.0, 1.0}, 1, {0, 0}, 1);
  CHECK_THROWS(off_eel(one, small_eel(1)));
  auto cfg = small_eel(1);
  cfg.ga.max_evaluations = 10;
  std::mt19937_64 rng(1);
  CHECK_THROWS(on_eel(oracle::random_dataset(rng, 10, 2, 2), cfg));
}
