#pragma once

#include <cstdint>
#include <span>

#include "crier/eventlog.hpp"
#include "crier/model.hpp"

namespace crier {

/// Conformance value kept as an exact ratio so that replays can be compared
/// bit-for-bit. An empty denominator reads as 1.
struct MetricValue {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  double value() const noexcept {
    return denominator == 0 ? 1.0
                            : static_cast<double>(numerator) /
                                  static_cast<double>(denominator);
  }

  /// Compares the ratios, not the representations (2/4 == 1/2).
  friend bool operator==(const MetricValue& a, const MetricValue& b) noexcept {
    return a.numerator * b.denominator == b.numerator * a.denominator &&
           (a.denominator == 0) == (b.denominator == 0);
  }
};

/// Share of window traces (with multiplicity) whose behavior the model fully
/// supports. Throws InvalidArgument on an empty window.
MetricValue fitness(std::span<const Trace> window, const BehaviorModel& model);

/// Share of the model's directly-follows pairs observed in the window. A
/// model without pairs yields 0/0, which reads as 1.
MetricValue precision(std::span<const Trace> window,
                      const BehaviorModel& model);

}  // namespace crier
