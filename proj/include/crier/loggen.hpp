#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crier/detector.hpp"
#include "crier/eventlog.hpp"
#include "crier/patterns.hpp"
#include "crier/process_tree.hpp"

namespace crier {

/// Cumulative probability that a trace inside a change region comes from
/// the new model, as a function of its offset from the region start.
struct DriftDistribution {
  enum class Kind { linear, gaussian, exponential, constant };

  Kind kind = Kind::linear;
  /// linear: {slope}; gaussian: {mu, sigma2}; exponential: {lambda};
  /// constant: {p, n}.
  double a = 0.0;
  double b = 0.0;

  static DriftDistribution linear(double slope);
  /// `sigma2` is the spread parameter of the bell and enters the cdf as the
  /// standard deviation.
  static DriftDistribution gaussian(double mu, double sigma2);
  static DriftDistribution exponential(double lambda);
  static DriftDistribution constant(double p, std::size_t n);

  /// `linear:<slope>`, `gaussian:<mu>:<sigma2>`, `exponential:<lambda>`,
  /// `constant:<p>:<n>`. Throws InvalidArgument.
  static DriftDistribution parse(std::string_view text);
  std::string to_string() const;

  double cdf(double offset) const;

  /// First offset whose cdf exceeds 0.999, i.e. the region width.
  std::size_t region_width() const;

  bool operator==(const DriftDistribution&) const = default;
};

inline constexpr double kRegionEndCdf = 0.999;
inline constexpr std::size_t kStableBlock = 500;

/// The twelve distributions of the benchmark, in table order.
std::vector<DriftDistribution> benchmark_distributions();

/// The ten change patterns of the benchmark.
std::vector<ChangePattern> benchmark_patterns();

struct GroundTruth {
  std::vector<Interval> regions;
  std::size_t log_size = 0;

  bool operator==(const GroundTruth&) const = default;
};

/// `{"log_size":int,"regions":[[t1,t2],...]}`.
nlohmann::json to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const nlohmann::json& j);

/// Region layout implied by the distribution alone.
GroundTruth expected_truth(const DriftDistribution& dist,
                           std::size_t drift_count);

struct GeneratedLog {
  EventLog log;
  GroundTruth truth;
};

/// Alternates the two models: a stable block of 500 traces from the current
/// model, then a change region where each trace comes from the other model
/// with probability cdf(offset). After the last region a final stable block
/// closes the log. Throws InvalidArgument when both models have the same
/// variants or `drift_count` is zero.
GeneratedLog generate_log(const ProcessTree& base, const ProcessTree& derived,
                          const DriftDistribution& dist,
                          std::size_t drift_count, std::uint64_t seed);

}  // namespace crier
