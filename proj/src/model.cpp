#include "crier/model.hpp"

#include <nlohmann/json.hpp>

#include "crier/error.hpp"

namespace crier {

BehaviorModel::BehaviorModel(std::set<Behavior> variants,
                             std::set<DfPair> df_pairs,
                             std::size_t source_size)
    : variants_(std::move(variants)),
      df_pairs_(std::move(df_pairs)),
      source_size_(source_size) {
  if (variants_.empty()) throw InvalidArgument("model has no variants");
  for (const auto& v : variants_)
    for (std::size_t k = 1; k < v.size(); ++k)
      if (!df_pairs_.contains({v[k - 1], v[k]}))
        throw InvalidArgument("pair (" + v[k - 1] + ", " + v[k] +
                              ") of a variant is not a model relation");
}

std::set<DfPair> directly_follows(const Behavior& behavior) {
  std::set<DfPair> out;
  for (std::size_t k = 1; k < behavior.size(); ++k)
    out.emplace(behavior[k - 1], behavior[k]);
  return out;
}

std::set<DfPair> directly_follows(std::span<const Trace> traces) {
  std::set<DfPair> out;
  for (const auto& t : traces) {
    const auto& b = t.behavior();
    for (std::size_t k = 1; k < b.size(); ++k) out.emplace(b[k - 1], b[k]);
  }
  return out;
}

BehaviorModel discover(std::span<const Trace> traces) {
  if (traces.empty())
    throw InvalidArgument("cannot discover a model from an empty window");
  return BehaviorModel(log_behavior(traces), directly_follows(traces),
                       traces.size());
}

bool supports(const BehaviorModel& model, const Behavior& behavior) {
  return model.variants().contains(behavior);
}

bool behavior_equal(const BehaviorModel& a, const BehaviorModel& b) {
  return a.variants() == b.variants();
}

nlohmann::json to_json(const BehaviorModel& model) {
  nlohmann::json variants = nlohmann::json::array();
  for (const auto& v : model.variants()) variants.push_back(v);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : model.df_pairs())
    pairs.push_back(nlohmann::json::array({a, b}));
  return {{"variants", std::move(variants)},
          {"df_pairs", std::move(pairs)},
          {"source_size", model.source_size()}};
}

BehaviorModel model_from_json(const nlohmann::json& j) {
  try {
    std::set<Behavior> variants;
    for (const auto& v : j.at("variants"))
      variants.insert(v.get<Behavior>());
    std::set<DfPair> pairs;
    for (const auto& p : j.at("df_pairs"))
      pairs.emplace(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    return BehaviorModel(std::move(variants), std::move(pairs),
                         j.value("source_size", std::size_t{0}));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace crier
