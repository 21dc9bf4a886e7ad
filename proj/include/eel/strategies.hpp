#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "eel/dataset.hpp"
#include "eel/ensemble.hpp"
#include "eel/fitness.hpp"
#include "eel/ga.hpp"

namespace eel {

enum class Strategy { off, on };

struct EELConfig {
  GAConfig ga;
  FitnessParams fitness;
  Strategy strategy = Strategy::off;
  DedupMode dedup = DedupMode::genome;
};

/// One row of per-generation telemetry.
struct GenerationStats {
  std::size_t generation = 0;
  std::size_t evaluations = 0;
  double best_fitness = 0.0;
  /// Current ensemble size (On-EEL); 0 while Off-EEL is still evolving.
  std::size_t ensemble_size = 0;
  /// Training error of the current ensemble (On-EEL) or of the best
  /// population member (Off-EEL, single GA).
  double train_error = 0.0;
};

using Telemetry = std::function<void(const GenerationStats&)>;

struct OffEelResult {
  Ensemble ensemble;
  Population final_population;
  /// Index in the final population of the lowest-training-error member.
  std::size_t best_index = 0;
};

/// Evolves with the whole current population as reference set, then selects
/// an ensemble from the final population seeded with its most accurate member.
OffEelResult off_eel_run(const Dataset& train, const EELConfig& cfg,
                         const Telemetry& telemetry = {});
Ensemble off_eel(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry = {});

struct OnEelResult {
  Ensemble ensemble;
  /// |L_t| after each generation t = 1..T.
  std::vector<std::size_t> sizes;
};

/// Grows the ensemble every generation, using it as the reference set for the
/// next one; members are never removed. Runs generation_budget() generations.
OnEelResult on_eel_run(const Dataset& train, const EELConfig& cfg,
                       const Telemetry& telemetry = {});
Ensemble on_eel(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry = {});

struct SingleGaResult {
  /// Lowest training error seen in any generation (earliest on ties).
  LinearClassifier best_of_run;
  double best_train_error = 1.0;
  /// Lowest-error member of the last population (lowest index on ties).
  LinearClassifier last_generation_best;
  Population final_population;
};

/// Plain GA maximising 1 - training error.
SingleGaResult ga_single_run(const Dataset& train, const GAConfig& cfg,
                             const Telemetry& telemetry = {});
LinearClassifier ga_single(const Dataset& train, const GAConfig& cfg,
                           const Telemetry& telemetry = {});

}  // namespace eel
