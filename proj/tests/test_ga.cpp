#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "eel/ga.hpp"

using namespace eel;

namespace {

// Fitness = minus squared distance of the genome to the all-ones point.
BatchEvaluator sphere() {
  return [](std::span<Individual> inds) {
    for (auto& ind : inds) {
      double s = 0.0;
      for (double g : ind.genome) s += (g - 1.0) * (g - 1.0);
      ind.fitness = -s;
      ind.predictions_valid = true;
    }
  };
}

GAConfig small_config() {
  GAConfig cfg;
  cfg.population_size = 20;
  cfg.max_evaluations = 200;
  return cfg;
}

}  // namespace

TEST_CASE("initial population") {
  GAConfig cfg;
  Rng rng(1);
  const auto pop = init_population(cfg, 10, rng);
  CHECK(pop.individuals.size() == 500);
  CHECK(pop.evaluations == 0);
  for (const auto& ind : pop.individuals) {
    CHECK(ind.genome.size() == 10);
    for (double g : ind.genome) {
      CHECK(g >= -1.0);
      CHECK(g <= 1.0);
    }
  }
  Rng again(1);
  const auto pop2 = init_population(cfg, 10, again);
  for (std::size_t i = 0; i < 500; ++i) {
    CHECK(pop.individuals[i].genome == pop2.individuals[i].genome);
  }
  CHECK(cfg.generation_budget() == 200);
}

TEST_CASE("config validation") {
  GAConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.population_size = 0;
  CHECK_THROWS(cfg.validate());
  cfg = GAConfig{};
  cfg.sbx_probability = 1.5;
  CHECK_THROWS(cfg.validate());
  cfg = GAConfig{};
  cfg.tournament_size = 0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("sbx identities") {
  const std::vector<double> p1{0.3, -1.2, 4.0};
  const std::vector<double> p2{-0.7, 2.0, 4.0};
  const std::vector<double> half(3, 0.5);
  const auto [c1, c2] = sbx_crossover(p1, p2, 2.0, half);
  CHECK(c1 == p1);
  CHECK(c2 == p2);
  CHECK(sbx_spread(0.5, 2.0) == 1.0);

  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<double> a(3), b(3), draws(3);
    for (auto* v : {&a, &b}) for (double& x : *v) x = 10.0 * u(rng) - 5.0;
    for (double& x : draws) x = u(rng);
    const auto [x1, x2] = sbx_crossover(a, b, 2.0, draws);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs((x1[j] + x2[j]) - (a[j] + b[j])) <= 1e-12);
    }
    const auto [s1, s2] = sbx_crossover(a, a, 2.0, rng);
    CHECK(s1 == a);
    CHECK(s2 == a);
  }
}

TEST_CASE("gaussian mutation distribution") {
  Rng rng(12);
  const std::vector<double> zero(4, 0.0);
  std::vector<double> sum(4, 0.0), sq(4, 0.0);
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const auto m = gaussian_mutation(zero, 0.05, rng);
    REQUIRE(m.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
      sum[j] += m[j];
      sq[j] += m[j] * m[j];
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const double mean = sum[j] / draws;
    const double sd = std::sqrt((sq[j] - draws * mean * mean) / (draws - 1));
    CHECK(std::abs(mean) < 4.0 * 0.05 / std::sqrt(double(draws)));
    CHECK(std::abs(sd - 0.05) < 0.005);
  }
  const std::vector<double> g{0.25, -1.5, 3.0, 0.0};
  const auto near = gaussian_mutation(g, 1e-15, rng);
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(near[j] - g[j]) < 1e-13);
  CHECK_THROWS(gaussian_mutation(zero, 0.0, rng));
}

TEST_CASE("tournament selection") {
  Population pop;
  for (double f : {1.0, 5.0, 3.0, 5.0}) {
    pop.individuals.push_back(Individual{{f}, f, {}, true});
  }
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto idx = tournament_select(pop, 200, rng);
    CHECK(pop.individuals[idx].fitness == 5.0);
  }
  std::vector<int> hits(4, 0);
  for (int k = 0; k < 8000; ++k) ++hits[tournament_select(pop, 1, rng)];
  for (int h : hits) CHECK(std::abs(h - 2000) < 200);

  Population two;
  two.individuals.push_back(Individual{{0.0}, 5.0, {}, true});
  two.individuals.push_back(Individual{{1.0}, 3.0, {}, true});
  // Whenever both are drawn the fitter wins, so index 1 needs two draws of itself.
  int ones = 0;
  for (int k = 0; k < 8000; ++k) ones += tournament_select(two, 2, rng) == 1;
  CHECK(std::abs(ones - 2000) < 200);
}

TEST_CASE("generation accounting and variation-free copies") {
  auto cfg = small_config();
  Rng init(1);
  auto pop = init_population(cfg, 3, init);
  evaluate_population(pop, sphere());
  CHECK(pop.evaluations == 20);
  std::set<Genome> parents;
  for (const auto& ind : pop.individuals) parents.insert(ind.genome);

  cfg.sbx_probability = 0.0;
  cfg.mutation_probability = 0.0;
  cfg.tournament_size = cfg.population_size;
  double best = -1e300;
  for (std::size_t t = 2; t <= cfg.generation_budget(); ++t) {
    Rng rng = make_stream(1, t);
    pop = evolve_generation(pop, sphere(), cfg, rng);
    CHECK(pop.individuals.size() == 20);
    CHECK(pop.evaluations == 20 * t);
    for (const auto& ind : pop.individuals) CHECK(parents.count(ind.genome) == 1);
    double gen_best = -1e300;
    for (const auto& ind : pop.individuals) gen_best = std::max(gen_best, ind.fitness);
    CHECK(gen_best >= best);
    best = gen_best;
  }
  Rng rng(0);
  CHECK_THROWS_AS(evolve_generation(pop, sphere(), cfg, rng), std::logic_error);
}

TEST_CASE("evolution is deterministic and makes progress") {
  auto cfg = small_config();
  cfg.population_size = 40;
  cfg.max_evaluations = 40 * 60;
  cfg.mutation_scope = MutationScope::gene;
  auto run = [&] {
    Rng init(7);
    auto pop = init_population(cfg, 4, init);
    evaluate_population(pop, sphere());
    for (std::size_t t = 2; t <= cfg.generation_budget(); ++t) {
      Rng rng = make_stream(7, t);
      pop = evolve_generation(pop, sphere(), cfg, rng);
    }
    return pop;
  };
  const auto a = run();
  const auto b = run();
  double best = -1e300;
  for (std::size_t i = 0; i < a.individuals.size(); ++i) {
    CHECK(a.individuals[i].genome == b.individuals[i].genome);
    best = std::max(best, a.individuals[i].fitness);
  }
  // Uniform starts in [-1,1]^4 average a squared distance of about 5.3.
  CHECK(best > -0.5);
}
