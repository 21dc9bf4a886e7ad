#include "eel/ga.hpp"

#include <cmath>
#include <stdexcept>

namespace eel {

void GAConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw std::invalid_argument("ga: population size must be even and at least 2");
  }
  if (tournament_size < 1) {
    throw std::invalid_argument("ga: tournament size must be at least 1");
  }
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(sbx_probability) || !probability(mutation_probability)) {
    throw std::invalid_argument("ga: probabilities must lie in [0, 1]");
  }
  if (!(mutation_sigma > 0.0)) {
    throw std::invalid_argument("ga: mutation sigma must be positive");
  }
  if (!(sbx_eta >= 0.0)) {
    throw std::invalid_argument("ga: SBX eta must be nonnegative");
  }
  if (!(init_low <= init_high)) {
    throw std::invalid_argument("ga: empty initialization range");
  }
}

Population init_population(const GAConfig& cfg, std::size_t genome_length, Rng& rng) {
  if (genome_length == 0) {
    throw std::invalid_argument("ga: genome length must be at least 1");
  }
  std::uniform_real_distribution<double> gene(cfg.init_low, cfg.init_high);
  Population pop;
  pop.individuals.resize(cfg.population_size);
  for (auto& ind : pop.individuals) {
    ind.genome.resize(genome_length);
    for (double& g : ind.genome) {
      g = gene(rng);
    }
  }
  return pop;
}

void evaluate_population(Population& pop, const BatchEvaluator& evaluate) {
  evaluate(pop.individuals);
  pop.evaluations += pop.individuals.size();
}

double sbx_spread(double u, double eta) noexcept {
  const double exponent = 1.0 / (eta + 1.0);
  if (u < 0.5) {
    return std::pow(2.0 * u, exponent);
  }
  return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        double eta, std::span<const double> u) {
  if (p1.size() != p2.size() || u.size() != p1.size()) {
    throw std::invalid_argument("sbx: length mismatch");
  }
  Genome c1(p1.size());
  Genome c2(p1.size());
  for (std::size_t j = 0; j < p1.size(); ++j) {
    if (p1[j] == p2[j]) {
      c1[j] = c2[j] = p1[j];
      continue;
    }
    const double beta = sbx_spread(u[j], eta);
    c1[j] = 0.5 * ((1.0 + beta) * p1[j] + (1.0 - beta) * p2[j]);
    c2[j] = 0.5 * ((1.0 - beta) * p1[j] + (1.0 + beta) * p2[j]);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        double eta, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> u(p1.size());
  for (double& v : u) {
    v = uniform(rng);
  }
  return sbx_crossover(p1, p2, eta, u);
}

Genome gaussian_mutation(std::span<const double> g, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("mutation: sigma must be positive");
  }
  std::normal_distribution<double> noise(0.0, sigma);
  Genome out(g.begin(), g.end());
  for (double& v : out) {
    v += noise(rng);
  }
  return out;
}

std::size_t tournament_select(const Population& pop, std::size_t size, Rng& rng) {
  if (pop.individuals.empty()) {
    throw std::invalid_argument("tournament: empty population");
  }
  if (size == 0) {
    throw std::invalid_argument("tournament: size must be at least 1");
  }
  std::uniform_int_distribution<std::size_t> pick(0, pop.individuals.size() - 1);
  std::size_t best = pick(rng);
  for (std::size_t k = 1; k < size; ++k) {
    const std::size_t challenger = pick(rng);
    if (pop.individuals[challenger].fitness > pop.individuals[best].fitness) {
      best = challenger;
    }
  }
  return best;
}

namespace {

void mutate(Individual& child, const GAConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  if (cfg.mutation_scope == MutationScope::individual) {
    if (uniform(rng) < cfg.mutation_probability) {
      child.genome = gaussian_mutation(child.genome, cfg.mutation_sigma, rng);
      child.predictions_valid = false;
    }
    return;
  }
  std::normal_distribution<double> noise(0.0, cfg.mutation_sigma);
  for (double& g : child.genome) {
    if (uniform(rng) < cfg.mutation_probability) {
      g += noise(rng);
      child.predictions_valid = false;
    }
  }
}

}  // namespace

Population evolve_generation(const Population& pop, const BatchEvaluator& evaluate,
                             const GAConfig& cfg, Rng& rng) {
  const std::size_t size = pop.individuals.size();
  if (size != cfg.population_size) {
    throw std::invalid_argument("evolve_generation: population size differs from config");
  }
  if (pop.evaluations + size > cfg.max_evaluations) {
    throw std::logic_error("evolve_generation: evaluation budget exhausted");
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Population next;
  next.generation = pop.generation + 1;
  next.evaluations = pop.evaluations;
  next.individuals.reserve(size);
  while (next.individuals.size() < size) {
    Individual a = pop.individuals[tournament_select(pop, cfg.tournament_size, rng)];
    Individual b = pop.individuals[tournament_select(pop, cfg.tournament_size, rng)];
    if (uniform(rng) < cfg.sbx_probability) {
      auto [c1, c2] = sbx_crossover(a.genome, b.genome, cfg.sbx_eta, rng);
      a.genome = std::move(c1);
      b.genome = std::move(c2);
      a.predictions_valid = false;
      b.predictions_valid = false;
    }
    mutate(a, cfg, rng);
    mutate(b, cfg, rng);
    next.individuals.push_back(std::move(a));
    if (next.individuals.size() < size) {
      next.individuals.push_back(std::move(b));
    }
  }
  evaluate_population(next, evaluate);
  return next;
}

}  // namespace eel
