#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crier/detector.hpp"
#include "crier/loggen.hpp"

namespace crier {

struct RegionMatch {
  Interval real;
  Interval detected;
  std::size_t delay = 0;
  double overlap = 0.0;
};

struct EvalResult {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double f_score = 0.0;
  double precision_eval = 0.0;
  double recall = 0.0;
  std::vector<RegionMatch> per_match;

  /// Means over true positives; empty when there are none.
  std::optional<double> mean_delay() const;
  std::optional<double> mean_overlap() const;
};

/// |start(real) - start(detected)|.
std::size_t delay(const Interval& real, const Interval& detected);

/// |real ∩ detected| / |real|. An empty real region scores 1 when the starts
/// coincide and 0 otherwise.
double overlap(const Interval& real, const Interval& detected);

/// True when the detection shares a trace with the real region. An empty
/// real region counts as the single position at its start.
bool overlaps(const Interval& real, const Interval& detected);

/// Sudden drifts as one-trace regions merged with the gradual ones, sorted
/// by start.
std::vector<Interval> detected_regions(const DriftReport& report);

/// Scans detections chronologically. A detection is a true positive when it
/// overlaps the earliest real region not matched yet, and a false positive
/// otherwise; unmatched real regions are false negatives.
EvalResult match(const std::vector<Interval>& real,
                 const std::vector<Interval>& detected);

EvalResult evaluate(const DriftReport& report, const GroundTruth& truth);

nlohmann::json to_json(const EvalResult& result);

/// Header `log,pattern,distribution,f_score,mean_delay,mean_overlap`.
struct AggregateRow {
  std::string log;
  std::string pattern;
  std::string distribution;
  EvalResult result;
};

void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         std::ostream& out);

}  // namespace crier
