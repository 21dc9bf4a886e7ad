#include "eel/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace eel {
namespace {

nlohmann::json threshold_to_json(double t) {
  if (std::isinf(t)) {
    return t > 0 ? "inf" : "-inf";
  }
  return t;
}

double threshold_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") {
      return kInf;
    }
    if (s == "-inf") {
      return -kInf;
    }
    throw std::invalid_argument("stump threshold: unexpected string " + s);
  }
  return j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const LinearClassifier& c) {
  j = nlohmann::json{{"classes", c.classes()}, {"features", c.features()}, {"genome", encode(c)}};
}

void from_json(const nlohmann::json& j, LinearClassifier& c) {
  const auto genome = j.at("genome").get<Genome>();
  c = decode(genome, j.at("classes").get<std::size_t>(), j.at("features").get<std::size_t>());
}

void to_json(nlohmann::json& j, const Ensemble& e) {
  auto members = nlohmann::json::array();
  for (const auto& m : e.members) {
    members.push_back(encode(m));
  }
  j = nlohmann::json{{"classes", e.empty() ? 0 : e.members.front().classes()},
                     {"features", e.empty() ? 0 : e.members.front().features()},
                     {"members", std::move(members)}};
}

void from_json(const nlohmann::json& j, Ensemble& e) {
  const auto classes = j.at("classes").get<std::size_t>();
  const auto features = j.at("features").get<std::size_t>();
  e.members.clear();
  for (const auto& g : j.at("members")) {
    e.members.push_back(decode(g.get<Genome>(), classes, features));
  }
}

void to_json(nlohmann::json& j, const DecisionStump& s) {
  j = nlohmann::json{{"feature", s.feature},
                     {"threshold", threshold_to_json(s.threshold)},
                     {"op", s.op == StumpOp::less ? "<" : ">"},
                     {"class_if_true", s.class_if_true},
                     {"class_if_false", s.class_if_false}};
}

void from_json(const nlohmann::json& j, DecisionStump& s) {
  s.feature = j.at("feature").get<std::size_t>();
  s.threshold = threshold_from_json(j.at("threshold"));
  const auto op = j.at("op").get<std::string>();
  if (op != "<" && op != ">") {
    throw std::invalid_argument("stump: unknown operator " + op);
  }
  s.op = op == "<" ? StumpOp::less : StumpOp::greater;
  s.class_if_true = j.at("class_if_true").get<ClassIndex>();
  s.class_if_false = j.at("class_if_false").get<ClassIndex>();
}

void to_json(nlohmann::json& j, const WeightedEnsemble& e) {
  j = nlohmann::json{{"stumps", e.stumps}, {"alphas", e.alphas}};
}

void from_json(const nlohmann::json& j, WeightedEnsemble& e) {
  e.stumps = j.at("stumps").get<std::vector<DecisionStump>>();
  e.alphas = j.at("alphas").get<std::vector<double>>();
  if (e.stumps.size() != e.alphas.size()) {
    throw std::invalid_argument("weighted ensemble: stump and alpha counts differ");
  }
}

void to_json(nlohmann::json& j, const FoldPlan& plan) {
  j = nlohmann::json{{"k", plan.k}, {"seed", plan.seed}, {"assignments", plan.assignments}};
}

void from_json(const nlohmann::json& j, FoldPlan& plan) {
  plan.k = j.at("k").get<std::size_t>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.assignments = j.at("assignments").get<std::vector<std::size_t>>();
  for (std::size_t f : plan.assignments) {
    if (f >= plan.k) {
      throw std::invalid_argument("fold plan: assignment outside {0..k-1}");
    }
  }
}

}  // namespace eel
