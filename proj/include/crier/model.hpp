#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "crier/eventlog.hpp"

namespace crier {

/// Ordered activity pair (a, b): `b` directly follows `a`.
using DfPair = std::pair<std::string, std::string>;

/// Behavior captured by a discovered model: the activity sequences it
/// supports and the directly-follows relations between its activities.
class BehaviorModel {
 public:
  /// Throws InvalidArgument when `variants` is empty or some consecutive pair
  /// of a variant is missing from `df_pairs`.
  BehaviorModel(std::set<Behavior> variants, std::set<DfPair> df_pairs,
                std::size_t source_size);

  const std::set<Behavior>& variants() const noexcept { return variants_; }
  const std::set<DfPair>& df_pairs() const noexcept { return df_pairs_; }
  std::size_t source_size() const noexcept { return source_size_; }

  bool operator==(const BehaviorModel&) const = default;

 private:
  std::set<Behavior> variants_;
  std::set<DfPair> df_pairs_;
  std::size_t source_size_;
};

/// Consecutive activity pairs of one behavior.
std::set<DfPair> directly_follows(const Behavior& behavior);

/// Union of the directly-follows pairs of every trace.
std::set<DfPair> directly_follows(std::span<const Trace> traces);

/// Variant-model discovery: the model supports exactly the distinct
/// behaviors of `traces` and holds every pair observed among them.
BehaviorModel discover(std::span<const Trace> traces);

/// Pluggable discovery, so a generalizing miner can replace the variant model.
using Discovery = std::function<BehaviorModel(std::span<const Trace>)>;

bool supports(const BehaviorModel& model, const Behavior& behavior);

/// Equality of the supported behavior sets; relations are not compared.
bool behavior_equal(const BehaviorModel& a, const BehaviorModel& b);

/// Sorted variants and pairs, suitable for report attachments.
nlohmann::json to_json(const BehaviorModel& model);
BehaviorModel model_from_json(const nlohmann::json& j);

}  // namespace crier
