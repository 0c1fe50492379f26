#include "crier/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace crier {

namespace {

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

nlohmann::json interval_json(const Interval& iv) {
  return nlohmann::json::array({iv.start, iv.end});
}

}  // namespace

std::optional<double> EvalResult::mean_delay() const {
  if (per_match.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& m : per_match) sum += static_cast<double>(m.delay);
  return sum / static_cast<double>(per_match.size());
}

std::optional<double> EvalResult::mean_overlap() const {
  if (per_match.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& m : per_match) sum += m.overlap;
  return sum / static_cast<double>(per_match.size());
}

std::size_t delay(const Interval& real, const Interval& detected) {
  return real.start > detected.start ? real.start - detected.start
                                     : detected.start - real.start;
}

double overlap(const Interval& real, const Interval& detected) {
  if (real.length() == 0) return real.start == detected.start ? 1.0 : 0.0;
  const std::size_t lo = std::max(real.start, detected.start);
  const std::size_t hi = std::min(real.end, detected.end);
  if (hi <= lo) return 0.0;
  return static_cast<double>(hi - lo) / static_cast<double>(real.length());
}

bool overlaps(const Interval& real, const Interval& detected) {
  if (real.length() == 0)
    return detected.start <= real.start &&
           (real.start < detected.end || detected.start == real.start);
  return std::max(real.start, detected.start) <
         std::min(real.end, detected.end);
}

std::vector<Interval> detected_regions(const DriftReport& report) {
  std::vector<Interval> out;
  out.reserve(report.sudden.size() + report.gradual.size());
  for (std::size_t s : report.sudden) out.push_back({s, s + 1});
  out.insert(out.end(), report.gradual.begin(), report.gradual.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Interval& a, const Interval& b) {
                     return a.start != b.start ? a.start < b.start
                                               : a.end < b.end;
                   });
  return out;
}

EvalResult match(const std::vector<Interval>& real,
                 const std::vector<Interval>& detected) {
  EvalResult result;
  std::vector<bool> matched(real.size(), false);
  for (const auto& d : detected) {
    bool hit = false;
    for (std::size_t r = 0; r < real.size(); ++r) {
      if (matched[r] || !overlaps(real[r], d)) continue;
      matched[r] = true;
      result.per_match.push_back(
          {real[r], d, delay(real[r], d), overlap(real[r], d)});
      hit = true;
      break;
    }
    ++(hit ? result.tp : result.fp);
  }
  result.fn = static_cast<std::size_t>(
      std::count(matched.begin(), matched.end(), false));

  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  result.precision_eval = ratio(result.tp, result.tp + result.fp);
  result.recall = ratio(result.tp, result.tp + result.fn);
  const double sum = result.precision_eval + result.recall;
  result.f_score =
      sum > 0.0 ? 2.0 * result.precision_eval * result.recall / sum : 0.0;
  return result;
}

EvalResult evaluate(const DriftReport& report, const GroundTruth& truth) {
  return match(truth.regions, detected_regions(report));
}

nlohmann::json to_json(const EvalResult& result) {
  nlohmann::json matches = nlohmann::json::array();
  for (const auto& m : result.per_match)
    matches.push_back({{"real", interval_json(m.real)},
                       {"detected", interval_json(m.detected)},
                       {"delay", m.delay},
                       {"overlap", m.overlap}});
  const auto optional_number = [](std::optional<double> x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
  };
  return {{"tp", result.tp},
          {"fp", result.fp},
          {"fn", result.fn},
          {"f_score", result.f_score},
          {"precision_eval", result.precision_eval},
          {"recall", result.recall},
          {"mean_delay", optional_number(result.mean_delay())},
          {"mean_overlap", optional_number(result.mean_overlap())},
          {"matches", std::move(matches)}};
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         std::ostream& out) {
  out << "log,pattern,distribution,f_score,mean_delay,mean_overlap\n";
  for (const auto& row : rows) {
    const auto d = row.result.mean_delay();
    const auto o = row.result.mean_overlap();
    out << row.log << ',' << row.pattern << ',' << row.distribution << ','
        << fixed(row.result.f_score) << ',' << (d ? fixed(*d) : "") << ','
        << (o ? fixed(*o) : "") << '\n';
  }
}

}  // namespace crier
