#pragma once

// JSON forms of the run artifacts. Classifiers are stored as flat genomes
// together with K and d; ensembles keep their selection order.

#include "json.hpp"

#include "eel/baselines.hpp"
#include "eel/classifiers.hpp"
#include "eel/dataset.hpp"
#include "eel/ensemble.hpp"

namespace eel {

void to_json(nlohmann::json& j, const LinearClassifier& c);
void from_json(const nlohmann::json& j, LinearClassifier& c);

void to_json(nlohmann::json& j, const Ensemble& e);
void from_json(const nlohmann::json& j, Ensemble& e);

void to_json(nlohmann::json& j, const DecisionStump& s);
void from_json(const nlohmann::json& j, DecisionStump& s);

void to_json(nlohmann::json& j, const WeightedEnsemble& e);
void from_json(const nlohmann::json& j, WeightedEnsemble& e);

void to_json(nlohmann::json& j, const FoldPlan& plan);
void from_json(const nlohmann::json& j, FoldPlan& plan);

}  // namespace eel
