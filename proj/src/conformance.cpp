#include "crier/conformance.hpp"

#include "crier/error.hpp"

namespace crier {

MetricValue fitness(std::span<const Trace> window, const BehaviorModel& model) {
  if (window.empty()) throw InvalidArgument("fitness of an empty window");
  std::uint64_t fitting = 0;
  for (const auto& t : window)
    if (supports(model, t.behavior())) ++fitting;
  return {fitting, window.size()};
}

MetricValue precision(std::span<const Trace> window,
                      const BehaviorModel& model) {
  if (window.empty()) throw InvalidArgument("precision of an empty window");
  const auto observed = directly_follows(window);
  std::uint64_t hit = 0;
  for (const auto& p : model.df_pairs())
    if (observed.contains(p)) ++hit;
  return {hit, model.df_pairs().size()};
}

}  // namespace crier
