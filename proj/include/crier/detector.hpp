#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crier/conformance.hpp"
#include "crier/eventlog.hpp"
#include "crier/model.hpp"

namespace crier {

enum class MetricKind { fitness, precision };

const char* to_string(MetricKind kind) noexcept;

/// How the window size is re-evaluated at start-up and after each drift.
enum class WindowGrowth {
  doubling,  ///< adaptive: double while three consecutive windows agree
  fixed,     ///< always the minimum size
};

/// Where detection resumes after a confirmed drift.
enum class ResumePolicy {
  /// Re-size the window on the traces after the confirming one, discover the
  /// new model from the confirming window clipped to start no earlier than
  /// the drift point, and keep sliding from the next trace. Measured windows
  /// never reach back past the drift point.
  drift_anchored,
  /// Re-discover from the confirming window and keep sliding from the next
  /// trace.
  confirming_window,
  /// Skip ahead by the re-adjusted window size and discover from the traces
  /// skipped over.
  jump_ahead,
};

/// Inputs handed to a candidate rule for one metric at one window.
struct CandidateContext {
  MetricKind kind;
  std::size_t window_end;   ///< index of the newest trace in the window
  std::size_t window_size;  ///< current n
  std::span<const double> series;       ///< values since the last drift
  const std::vector<bool>& previous_flags;  ///< flags before this window
  double significance;
};

using CandidateRule = std::function<bool(const CandidateContext&)>;

struct DetectorConfig {
  std::size_t min_window = 50;
  double significance = 0.05;
  WindowGrowth window_growth = WindowGrowth::doubling;
  ResumePolicy resume = ResumePolicy::drift_anchored;
  /// Empty means regression-based identification.
  CandidateRule candidate_rule;
  /// Empty means variant-model discovery.
  Discovery discovery;

  /// Throws InvalidArgument unless min_window >= 2 and 0 < significance < 1.
  void validate() const;
};

/// Half-open trace index range [start, end).
struct Interval {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start; }
  bool operator==(const Interval&) const = default;
};

struct WindowDiagnostics {
  std::size_t index = 0;  ///< newest trace in the window
  std::size_t window_size = 0;
  MetricValue fitness;
  MetricValue precision;
  bool candidate_fitness = false;
  bool candidate_precision = false;
  std::size_t model_id = 0;  ///< position in the model history
};

struct Confirmation {
  std::size_t trace = 0;       ///< pinpointed drift trace
  MetricKind kind = MetricKind::fitness;
  std::size_t window_end = 0;  ///< window in which the drift was confirmed
  std::size_t run_start = 0;   ///< first window of the candidate run
};

struct DriftReport {
  std::vector<std::size_t> sudden;
  std::vector<Interval> gradual;
  std::vector<WindowDiagnostics> diagnostics;
  std::vector<Confirmation> confirmations;
  std::vector<BehaviorModel> models;
  std::size_t initial_window = 0;

  bool empty() const noexcept { return sudden.empty() && gradual.empty(); }
};

/// Window size from three consecutive disjoint windows at doubling sizes.
/// Returns the first size at which their behaviors differ, or the largest
/// size whose three windows still fit. Logs shorter than three minimum
/// windows yield `min_window`.
std::size_t adjust_window(std::size_t min_window,
                          std::span<const Trace> traces,
                          const Discovery& discovery = {});

/// Regression over the last n + 1 values: a significant slope of either
/// sign marks a candidate, and a non-significant one extends a candidate
/// run already in progress.
bool identify_drift_candidate(std::size_t n, std::span<const double> series,
                              const std::vector<bool>& flags,
                              double significance = 0.05);

/// True when the last n flags are all set.
bool confirm_drift(std::size_t n, const std::vector<bool>& flags);

/// Fitness drifts land on the newest trace of the run's first window,
/// precision drifts on its oldest trace.
std::size_t pinpoint(MetricKind kind, std::size_t run_start_window_end,
                     std::size_t window_size);

/// Records the drift at `current` as sudden, or turns the previous sudden
/// drift into a gradual region ending at `current`.
///
/// A gradual region needs at least three models, a previous drift confirmed
/// by fitness and still listed as sudden, a current drift confirmed by
/// precision, and a sublog whose behaviors all belong to the model before
/// the previous drift or the newest model, with at least one of each.
void classify_drift(std::span<const BehaviorModel> model_history,
                    std::span<const Trace> sublog,
                    const std::optional<Confirmation>& previous,
                    const Confirmation& current, DriftReport& report);

/// Throws InvalidArgument for invalid configurations or logs shorter than
/// the minimum window.
DriftReport detect(const EventLog& log, const DetectorConfig& config = {});

void write_diagnostics_csv(const DriftReport& report, std::ostream& out);

/// `{"sudden":[...], "gradual":[[a,b],...], "diagnostics_csv":path}`.
nlohmann::json report_to_json(const DriftReport& report,
                              const std::string& diagnostics_csv);

/// Reads the sudden and gradual lists of a report JSON.
DriftReport report_from_json(const nlohmann::json& j);

}  // namespace crier
