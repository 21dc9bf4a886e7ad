#include "eel/strategies.hpp"

#include <algorithm>
#include <stdexcept>

namespace eel {
namespace {

void check_training_set(const Dataset& train, const GAConfig& cfg) {
  if (train.empty()) {
    throw std::invalid_argument("strategy: empty training set");
  }
  if (train.classes() < 2) {
    throw std::invalid_argument("strategy: need at least two classes");
  }
  cfg.validate();
  if (cfg.generation_budget() < 1) {
    throw std::invalid_argument("strategy: budget does not cover the initial population");
  }
}

void refresh_predictions(std::span<Individual> individuals, const Dataset& train) {
  for (auto& ind : individuals) {
    if (!ind.predictions_valid) {
      ind.predictions = predict_all(decode(ind.genome, train.classes(), train.features()), train);
      ind.predictions_valid = true;
    }
  }
}

std::vector<std::span<const ClassIndex>> prediction_views(std::span<const Individual> individuals) {
  std::vector<std::span<const ClassIndex>> views;
  views.reserve(individuals.size());
  for (const auto& ind : individuals) {
    views.emplace_back(ind.predictions);
  }
  return views;
}

/// Lowest training error, lowest index on ties.
std::size_t most_accurate(std::span<const Individual> individuals, const Dataset& train) {
  std::size_t best = 0;
  std::size_t best_errors = misclassified(individuals[0].predictions, train.labels());
  for (std::size_t k = 1; k < individuals.size(); ++k) {
    const std::size_t e = misclassified(individuals[k].predictions, train.labels());
    if (e < best_errors) {
      best = k;
      best_errors = e;
    }
  }
  return best;
}

double best_fitness(const Population& pop) {
  double best = pop.individuals.front().fitness;
  for (const auto& ind : pop.individuals) {
    best = std::max(best, ind.fitness);
  }
  return best;
}

BatchEvaluator accuracy_evaluator(const Dataset& train) {
  return [&train](std::span<Individual> individuals) {
    refresh_predictions(individuals, train);
    for (auto& ind : individuals) {
      ind.fitness = 1.0 - error_rate(ind.predictions, train.labels());
    }
  };
}

/// Pool members that survive deduplication, as indices into `individuals`.
std::vector<std::size_t> distinct_members(std::span<const Individual> individuals,
                                          DedupMode mode) {
  if (mode == DedupMode::genome) {
    std::vector<Genome> genomes;
    genomes.reserve(individuals.size());
    for (const auto& ind : individuals) {
      genomes.push_back(ind.genome);
    }
    return distinct_genomes(genomes);
  }
  const auto views = prediction_views(individuals);
  return distinct_predictions(views);
}

/// Runs the greedy selection of `individuals` on top of `votes` and returns
/// the indices (into `individuals`) of the chosen prefix, in order.
std::vector<std::size_t> select_members(std::span<const Individual> individuals,
                                        const VoteTable& votes, DedupMode mode) {
  const auto kept = distinct_members(individuals, mode);
  std::vector<std::span<const ClassIndex>> candidates;
  candidates.reserve(kept.size());
  for (std::size_t idx : kept) {
    candidates.emplace_back(individuals[idx].predictions);
  }
  const auto trace = greedy_selection(candidates, votes);
  std::vector<std::size_t> chosen;
  for (std::size_t t = 0; t < trace.chosen; ++t) {
    chosen.push_back(kept[trace.order[t]]);
  }
  return chosen;
}

LinearClassifier decode_for(const Individual& ind, const Dataset& train) {
  return decode(ind.genome, train.classes(), train.features());
}

}  // namespace

OffEelResult off_eel_run(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry) {
  check_training_set(train, cfg.ga);
  const std::uint64_t seed = cfg.ga.seed;

  const BatchEvaluator evaluate = [&](std::span<Individual> individuals) {
    refresh_predictions(individuals, train);
    const auto views = prediction_views(individuals);
    const auto weights = example_weights(views, train.labels(), cfg.fitness.loss);
    const auto powered = hardness_powers(weights, cfg.fitness.gamma);
    for (auto& ind : individuals) {
      ind.fitness = diversity_fitness(ind.predictions, train.labels(), powered);
    }
  };
  auto report = [&](const Population& pop) {
    if (!telemetry) {
      return;
    }
    const auto best = most_accurate(pop.individuals, train);
    telemetry({pop.generation + 1, pop.evaluations, best_fitness(pop), 0,
               error_rate(pop.individuals[best].predictions, train.labels())});
  };

  Rng init_rng = make_stream(seed, 0);
  Population pop = init_population(cfg.ga, genome_length(train.classes(), train.features()),
                                   init_rng);
  evaluate_population(pop, evaluate);
  report(pop);
  for (std::size_t t = 2; t <= cfg.ga.generation_budget(); ++t) {
    Rng rng = make_stream(seed, t);
    pop = evolve_generation(pop, evaluate, cfg.ga, rng);
    report(pop);
  }

  OffEelResult result;
  result.best_index = most_accurate(pop.individuals, train);
  VoteTable votes(train.labels(), train.classes());
  votes.add(pop.individuals[result.best_index].predictions);
  result.ensemble.members.push_back(decode_for(pop.individuals[result.best_index], train));
  for (std::size_t idx : select_members(pop.individuals, votes, cfg.dedup)) {
    result.ensemble.members.push_back(decode_for(pop.individuals[idx], train));
  }
  result.final_population = std::move(pop);
  return result;
}

Ensemble off_eel(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry) {
  return off_eel_run(train, cfg, telemetry).ensemble;
}

OnEelResult on_eel_run(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry) {
  check_training_set(train, cfg.ga);
  const std::uint64_t seed = cfg.ga.seed;
  const std::size_t n = train.size();
  const std::size_t classes = train.classes();

  OnEelResult result;
  VoteTable votes(train.labels(), classes);
  auto add_member = [&](const Individual& ind) {
    votes.add(ind.predictions);
    result.ensemble.members.push_back(decode_for(ind, train));
  };
  auto report = [&](const Population& pop) {
    result.sizes.push_back(votes.members());
    if (telemetry) {
      telemetry({pop.generation + 1, pop.evaluations, best_fitness(pop), votes.members(),
                 static_cast<double>(votes.errors()) / static_cast<double>(n)});
    }
  };

  // Generation 1: raw accuracy, ensemble seeded with the most accurate member.
  Rng init_rng = make_stream(seed, 0);
  Population pop = init_population(cfg.ga, genome_length(classes, train.features()), init_rng);
  evaluate_population(pop, accuracy_evaluator(train));
  add_member(pop.individuals[most_accurate(pop.individuals, train)]);
  for (std::size_t idx : select_members(pop.individuals, votes, cfg.dedup)) {
    add_member(pop.individuals[idx]);
  }
  report(pop);

  // Hardness weights with the current ensemble as reference set; they only
  // change when the ensemble does.
  std::vector<double> powered;
  std::size_t weighted_size = 0;
  const BatchEvaluator evaluate = [&](std::span<Individual> individuals) {
    refresh_predictions(individuals, train);
    for (auto& ind : individuals) {
      ind.fitness = diversity_fitness(ind.predictions, train.labels(), powered);
    }
  };

  for (std::size_t t = 2; t <= cfg.ga.generation_budget(); ++t) {
    if (weighted_size != votes.members()) {
      WeightVector w;
      w.reference_count = votes.members();
      w.values.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto v = votes.votes(i);
        double loss = 0.0;
        for (std::size_t k = 0; k < classes; ++k) {
          loss += v[k] * cfg.fitness.loss(static_cast<ClassIndex>(k), train.label(i));
        }
        w.values[i] = loss / static_cast<double>(votes.members());
      }
      powered = hardness_powers(w, cfg.fitness.gamma);
      weighted_size = votes.members();
    }
    Rng rng = make_stream(seed, t);
    pop = evolve_generation(pop, evaluate, cfg.ga, rng);
    for (std::size_t idx : select_members(pop.individuals, votes, cfg.dedup)) {
      add_member(pop.individuals[idx]);
    }
    report(pop);
  }
  return result;
}

Ensemble on_eel(const Dataset& train, const EELConfig& cfg, const Telemetry& telemetry) {
  return on_eel_run(train, cfg, telemetry).ensemble;
}

SingleGaResult ga_single_run(const Dataset& train, const GAConfig& cfg,
                             const Telemetry& telemetry) {
  check_training_set(train, cfg);
  const auto evaluate = accuracy_evaluator(train);

  SingleGaResult result;
  std::size_t best_errors = train.size() + 1;
  auto track = [&](const Population& pop) {
    const std::size_t idx = most_accurate(pop.individuals, train);
    const std::size_t errors = misclassified(pop.individuals[idx].predictions, train.labels());
    if (errors < best_errors) {
      best_errors = errors;
      result.best_of_run = decode_for(pop.individuals[idx], train);
    }
    if (telemetry) {
      telemetry({pop.generation + 1, pop.evaluations, best_fitness(pop), 0,
                 static_cast<double>(errors) / static_cast<double>(train.size())});
    }
  };

  Rng init_rng = make_stream(cfg.seed, 0);
  Population pop = init_population(cfg, genome_length(train.classes(), train.features()),
                                   init_rng);
  evaluate_population(pop, evaluate);
  track(pop);
  for (std::size_t t = 2; t <= cfg.generation_budget(); ++t) {
    Rng rng = make_stream(cfg.seed, t);
    pop = evolve_generation(pop, evaluate, cfg, rng);
    track(pop);
  }
  result.best_train_error = static_cast<double>(best_errors) / static_cast<double>(train.size());
  result.last_generation_best = decode_for(pop.individuals[most_accurate(pop.individuals, train)], train);
  result.final_population = std::move(pop);
  return result;
}

LinearClassifier ga_single(const Dataset& train, const GAConfig& cfg, const Telemetry& telemetry) {
  return ga_single_run(train, cfg, telemetry).best_of_run;
}

}  // namespace eel
