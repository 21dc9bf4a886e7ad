#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "eel/classifiers.hpp"
#include "eel/random.hpp"

namespace eel {

enum class MutationScope { individual, gene };

/// Real-valued generational GA settings. Defaults are the reference settings.
struct GAConfig {
  std::size_t population_size = 500;
  std::size_t max_evaluations = 100000;
  std::size_t tournament_size = 2;
  double init_low = -1.0;
  double init_high = 1.0;
  double sbx_probability = 0.3;
  double sbx_eta = 2.0;
  double mutation_probability = 0.1;
  double mutation_sigma = 0.05;
  MutationScope mutation_scope = MutationScope::individual;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  /// Number of evaluated generations the budget pays for, counting the
  /// initial population as the first.
  std::size_t generation_budget() const noexcept {
    return population_size == 0 ? 0 : max_evaluations / population_size;
  }
};

struct Individual {
  Genome genome;
  double fitness = 0.0;
  /// Class predicted for each training example; valid while
  /// `predictions_valid` is set.
  Predictions predictions;
  bool predictions_valid = false;
};

struct Population {
  std::vector<Individual> individuals;
  std::size_t generation = 0;
  std::size_t evaluations = 0;
};

/// Fills predictions (when invalid) and fitness of every individual.
using BatchEvaluator = std::function<void(std::span<Individual>)>;

/// Genes uniform in [init_low, init_high]; nothing is evaluated yet.
Population init_population(const GAConfig& cfg, std::size_t genome_length, Rng& rng);

/// Runs `evaluate` on the whole population and charges one evaluation per
/// individual.
void evaluate_population(Population& pop, const BatchEvaluator& evaluate);

/// SBX spread factor for a uniform draw u in [0, 1).
double sbx_spread(double u, double eta) noexcept;

/// Simulated binary crossover with one draw per gene taken from `u`.
std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        double eta, std::span<const double> u);
std::pair<Genome, Genome> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                        double eta, Rng& rng);

/// Adds independent N(0, sigma^2) noise to every gene.
Genome gaussian_mutation(std::span<const double> g, double sigma, Rng& rng);

/// Index of the fittest of `size` uniform draws (with replacement); the first
/// drawn wins ties.
std::size_t tournament_select(const Population& pop, std::size_t size, Rng& rng);

/// One generation: tournament parents, SBX with sbx_probability (else copies),
/// mutation with mutation_probability, then evaluation of all offspring, which
/// replace the parents outright. Throws std::logic_error when the remaining
/// budget cannot pay for a full generation.
Population evolve_generation(const Population& pop, const BatchEvaluator& evaluate,
                             const GAConfig& cfg, Rng& rng);

}  // namespace eel
