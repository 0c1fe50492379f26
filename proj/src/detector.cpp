#include "crier/detector.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "crier/error.hpp"
#include "crier/stats.hpp"

namespace crier {

const char* to_string(MetricKind kind) noexcept {
  return kind == MetricKind::fitness ? "fitness" : "precision";
}

void DetectorConfig::validate() const {
  if (min_window < 2) throw InvalidArgument("min_window must be at least 2");
  if (!(significance > 0.0 && significance < 1.0))
    throw InvalidArgument("significance must lie in (0, 1)");
}

namespace {

BehaviorModel run_discovery(const Discovery& discovery,
                            std::span<const Trace> traces) {
  return discovery ? discovery(traces) : discover(traces);
}

// Interned view of a log: every trace maps to a variant id, every variant to
// its distinct directly-follows pair ids. Window metrics then cost one pass
// over the window plus one pass over the distinct variants in it.
class LogIndex {
 public:
  explicit LogIndex(std::span<const Trace> traces) {
    std::map<Behavior, std::uint32_t> variant_ids;
    std::map<DfPair, std::uint32_t> pair_ids;
    trace_variant_.reserve(traces.size());
    for (const auto& t : traces) {
      auto [it, inserted] = variant_ids.try_emplace(
          t.behavior(), static_cast<std::uint32_t>(variants_.size()));
      if (inserted) {
        variants_.push_back(t.behavior());
        std::vector<std::uint32_t> pids;
        for (const auto& p : directly_follows(t.behavior())) {
          auto [pit, pnew] = pair_ids.try_emplace(
              p, static_cast<std::uint32_t>(pairs_.size()));
          if (pnew) pairs_.push_back(p);
          pids.push_back(pit->second);
        }
        variant_pairs_.push_back(std::move(pids));
      }
      trace_variant_.push_back(it->second);
    }
    variant_stamp_.assign(variants_.size(), 0);
    pair_stamp_.assign(pairs_.size(), 0);
  }

  struct CompiledModel {
    std::vector<char> supported;  // per variant id
    std::vector<char> relation;   // per pair id
    std::uint64_t relation_count = 0;
  };

  CompiledModel compile(const BehaviorModel& model) const {
    CompiledModel c;
    c.supported.resize(variants_.size());
    for (std::size_t v = 0; v < variants_.size(); ++v)
      c.supported[v] = supports(model, variants_[v]);
    c.relation.resize(pairs_.size());
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      c.relation[p] = model.df_pairs().contains(pairs_[p]);
    c.relation_count = model.df_pairs().size();
    return c;
  }

  // Metrics of traces [first, last].
  std::pair<MetricValue, MetricValue> measure(std::size_t first,
                                              std::size_t last,
                                              const CompiledModel& model) {
    ++stamp_;
    distinct_.clear();
    std::uint64_t fitting = 0;
    for (std::size_t k = first; k <= last; ++k) {
      const auto v = trace_variant_[k];
      if (model.supported[v]) ++fitting;
      if (variant_stamp_[v] != stamp_) {
        variant_stamp_[v] = stamp_;
        distinct_.push_back(v);
      }
    }
    std::uint64_t observed = 0;
    for (auto v : distinct_)
      for (auto p : variant_pairs_[v])
        if (model.relation[p] && pair_stamp_[p] != stamp_) {
          pair_stamp_[p] = stamp_;
          ++observed;
        }
    return {MetricValue{fitting, last - first + 1},
            MetricValue{observed, model.relation_count}};
  }

 private:
  std::vector<std::uint32_t> trace_variant_;
  std::vector<Behavior> variants_;
  std::vector<std::vector<std::uint32_t>> variant_pairs_;
  std::vector<DfPair> pairs_;
  std::vector<std::uint64_t> variant_stamp_;
  std::vector<std::uint64_t> pair_stamp_;
  std::vector<std::uint32_t> distinct_;
  std::uint64_t stamp_ = 0;
};

struct MetricTrack {
  std::vector<double> series;
  std::vector<bool> flags;
  std::size_t run_start = 0;

  void reset() {
    series.clear();
    flags.clear();
    run_start = 0;
  }
};

}  // namespace

std::size_t adjust_window(std::size_t min_window,
                          std::span<const Trace> traces,
                          const Discovery& discovery) {
  if (min_window < 2) throw InvalidArgument("min_window must be at least 2");
  std::size_t size = min_window;
  while (3 * size <= traces.size()) {
    const auto a = run_discovery(discovery, traces.subspan(0, size));
    const auto b = run_discovery(discovery, traces.subspan(size, size));
    const auto c = run_discovery(discovery, traces.subspan(2 * size, size));
    if (!behavior_equal(a, b) || !behavior_equal(b, c)) return size;
    if (6 * size > traces.size()) return size;
    size *= 2;
  }
  return size;
}

bool identify_drift_candidate(std::size_t n, std::span<const double> series,
                              const std::vector<bool>& flags,
                              double significance) {
  if (series.size() <= n) return false;
  const auto fit = stats::regress(series.subspan(series.size() - n - 1));
  const bool significant = fit.p_value < significance;
  if (significant && fit.slope != 0.0) return true;
  return !flags.empty() && flags.back();
}

bool confirm_drift(std::size_t n, const std::vector<bool>& flags) {
  if (flags.size() < n) return false;
  return std::all_of(flags.end() - static_cast<std::ptrdiff_t>(n), flags.end(),
                     [](bool f) { return f; });
}

std::size_t pinpoint(MetricKind kind, std::size_t run_start_window_end,
                     std::size_t window_size) {
  if (kind == MetricKind::fitness) return run_start_window_end;
  return run_start_window_end + 1 - window_size;
}

void classify_drift(std::span<const BehaviorModel> model_history,
                    std::span<const Trace> sublog,
                    const std::optional<Confirmation>& previous,
                    const Confirmation& current, DriftReport& report) {
  const std::size_t models = model_history.size();
  bool gradual = models > 2 && previous &&
                 previous->kind == MetricKind::fitness &&
                 current.kind == MetricKind::precision &&
                 !report.sudden.empty() &&
                 report.sudden.back() == previous->trace &&
                 current.trace > previous->trace && !sublog.empty();
  if (gradual) {
    const auto& before = model_history[models - 3];
    const auto& after = model_history[models - 1];
    bool some_before = false;
    bool some_after = false;
    for (const auto& t : sublog) {
      const bool in_before = supports(before, t.behavior());
      const bool in_after = supports(after, t.behavior());
      some_before |= in_before;
      some_after |= in_after;
      if (!in_before && !in_after) {
        gradual = false;
        break;
      }
    }
    gradual = gradual && some_before && some_after;
  }
  if (gradual) {
    report.sudden.pop_back();
    report.gradual.push_back({previous->trace, current.trace});
  } else {
    report.sudden.push_back(current.trace);
  }
}

DriftReport detect(const EventLog& log, const DetectorConfig& config) {
  config.validate();
  const std::size_t total = log.size();
  if (total < config.min_window)
    throw InvalidArgument("log has " + std::to_string(total) +
                          " traces, fewer than the minimum window of " +
                          std::to_string(config.min_window));

  const std::span<const Trace> traces(log.traces());
  auto adjust = [&](std::span<const Trace> rest) {
    if (config.window_growth == WindowGrowth::fixed) return config.min_window;
    return adjust_window(config.min_window, rest, config.discovery);
  };
  auto window = [&](std::size_t end, std::size_t size) {
    const std::size_t first = end + 1 >= size ? end + 1 - size : 0;
    return traces.subspan(first, end + 1 - first);
  };
  auto identify = [&](const CandidateContext& ctx) {
    if (config.candidate_rule) return config.candidate_rule(ctx);
    return identify_drift_candidate(ctx.window_size, ctx.series,
                                    ctx.previous_flags, ctx.significance);
  };

  LogIndex index(traces);
  DriftReport report;
  std::size_t n = adjust(traces);
  report.initial_window = n;
  std::size_t i = n - 1;
  report.models.push_back(run_discovery(config.discovery, window(i, n)));
  auto compiled = index.compile(report.models.back());

  std::optional<Confirmation> previous;
  std::size_t last_drift = 0;
  // Windows never reach back past the last drift point.
  std::size_t floor = 0;
  MetricTrack fit;
  MetricTrack prec;

  while (i < total) {
    fit.reset();
    prec.reset();
    bool confirmed = false;
    while (i < total && !confirmed) {
      const std::size_t first = std::max(floor, i + 1 - std::min(n, i + 1));
      const auto [gamma, rho] = index.measure(first, i, compiled);
      fit.series.push_back(gamma.value());
      prec.series.push_back(rho.value());

      bool flag_values[2];
      MetricTrack* tracks[2] = {&fit, &prec};
      for (int k = 0; k < 2; ++k) {
        auto& track = *tracks[k];
        const CandidateContext ctx{
            k == 0 ? MetricKind::fitness : MetricKind::precision, i, n,
            track.series, track.flags, config.significance};
        const bool flag = identify(ctx);
        if (flag && (track.flags.empty() || !track.flags.back()))
          track.run_start = i;
        track.flags.push_back(flag);
        flag_values[k] = flag;
      }
      report.diagnostics.push_back({i, i + 1 - first, gamma, rho,
                                    flag_values[0], flag_values[1],
                                    report.models.size() - 1});

      const bool by_fitness = confirm_drift(n, fit.flags);
      const bool by_precision = !by_fitness && confirm_drift(n, prec.flags);
      if (!by_fitness && !by_precision) {
        ++i;
        continue;
      }

      confirmed = true;
      const MetricKind kind =
          by_fitness ? MetricKind::fitness : MetricKind::precision;
      const std::size_t run_start = by_fitness ? fit.run_start : prec.run_start;
      const Confirmation current{pinpoint(kind, run_start, n), kind, i,
                                 run_start};
      report.confirmations.push_back(current);

      const std::size_t sub_first = std::min(last_drift + 1, current.trace);
      const auto sublog =
          traces.subspan(sub_first, current.trace + 1 - sub_first);
      std::size_t next_n = 0;
      if (config.resume == ResumePolicy::drift_anchored) {
        next_n = adjust(traces.subspan(i + 1));
        const std::size_t span = std::min(next_n, i + 1 - current.trace);
        report.models.push_back(
            run_discovery(config.discovery, window(i, span)));
        floor = current.trace;
        ++i;
      } else if (config.resume == ResumePolicy::confirming_window) {
        next_n = adjust(traces.subspan(i + 1));
        report.models.push_back(run_discovery(config.discovery, window(i, n)));
        ++i;
      } else {
        next_n = adjust(traces.subspan(i + 1));
        const std::size_t target = i + next_n;
        if (i + 1 < total) {
          const std::size_t end = std::min(target, total - 1);
          report.models.push_back(run_discovery(
              config.discovery, traces.subspan(i + 1, end - i)));
        } else {
          report.models.push_back(
              run_discovery(config.discovery, window(i, n)));
        }
        i = target;
      }
      n = next_n;
      compiled = index.compile(report.models.back());

      classify_drift(report.models, sublog, previous, current, report);
      previous = current;
      last_drift = current.trace;
    }
  }
  return report;
}

void write_diagnostics_csv(const DriftReport& report, std::ostream& out) {
  out << "index,window_size,fitness_num,fitness_den,precision_num,"
         "precision_den,cand_fitness,cand_precision,model_id\n";
  for (const auto& d : report.diagnostics) {
    out << d.index << ',' << d.window_size << ',' << d.fitness.numerator
        << ',' << d.fitness.denominator << ',' << d.precision.numerator << ','
        << d.precision.denominator << ',' << (d.candidate_fitness ? 1 : 0)
        << ',' << (d.candidate_precision ? 1 : 0) << ',' << d.model_id
        << '\n';
  }
}

nlohmann::json report_to_json(const DriftReport& report,
                              const std::string& diagnostics_csv) {
  nlohmann::json gradual = nlohmann::json::array();
  for (const auto& g : report.gradual)
    gradual.push_back(nlohmann::json::array({g.start, g.end}));
  return {{"sudden", report.sudden},
          {"gradual", std::move(gradual)},
          {"diagnostics_csv", diagnostics_csv}};
}

DriftReport report_from_json(const nlohmann::json& j) {
  DriftReport report;
  try {
    report.sudden = j.at("sudden").get<std::vector<std::size_t>>();
    for (const auto& g : j.at("gradual")) {
      Interval iv{g.at(0).get<std::size_t>(), g.at(1).get<std::size_t>()};
      if (iv.end <= iv.start)
        throw ParseError("gradual interval must have end > start");
      report.gradual.push_back(iv);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  return report;
}

}  // namespace crier
