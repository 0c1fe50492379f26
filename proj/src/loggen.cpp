#include "crier/loggen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "crier/error.hpp"

namespace crier {

namespace {

constexpr std::size_t kMaxRegionWidth = 10'000'000;

double parse_number(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw InvalidArgument("bad number '" + std::string(text) +
                          "' in distribution '" + std::string(whole) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

bool allows_empty_trace(const ProcessTree& tree) {
  try {
    return enumerate_variants(tree).count(Behavior{}) > 0;
  } catch (const InvalidArgument&) {
    return false;
  }
}

bool same_behavior(const ProcessTree& a, const ProcessTree& b) {
  if (a == b) return true;
  try {
    return enumerate_variants(a) == enumerate_variants(b);
  } catch (const InvalidArgument&) {
    return false;
  }
}

}  // namespace

DriftDistribution DriftDistribution::linear(double slope) {
  if (!(slope > 0.0)) throw InvalidArgument("linear slope must be positive");
  return {Kind::linear, slope, 0.0};
}

DriftDistribution DriftDistribution::gaussian(double mu, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("gaussian spread must be positive");
  return {Kind::gaussian, mu, sigma2};
}

DriftDistribution DriftDistribution::exponential(double lambda) {
  if (!(lambda > 0.0))
    throw InvalidArgument("exponential rate must be positive");
  return {Kind::exponential, lambda, 0.0};
}

DriftDistribution DriftDistribution::constant(double p, std::size_t n) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument("constant probability must lie in [0, 1]");
  return {Kind::constant, p, static_cast<double>(n)};
}

DriftDistribution DriftDistribution::parse(std::string_view text) {
  const auto parts = split(text, ':');
  const auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw InvalidArgument("distribution '" + std::string(text) +
                            "' expects " + std::to_string(n) + " parameter(s)");
  };
  const std::string_view kind = parts[0];
  if (kind == "linear") {
    arity(1);
    return linear(parse_number(parts[1], text));
  }
  if (kind == "gaussian") {
    arity(2);
    return gaussian(parse_number(parts[1], text), parse_number(parts[2], text));
  }
  if (kind == "exponential") {
    arity(1);
    return exponential(parse_number(parts[1], text));
  }
  if (kind == "constant") {
    arity(2);
    const double n = parse_number(parts[2], text);
    if (n < 0 || n != std::floor(n))
      throw InvalidArgument("constant length must be a non-negative integer");
    return constant(parse_number(parts[1], text), static_cast<std::size_t>(n));
  }
  throw InvalidArgument("unknown distribution '" + std::string(text) + "'");
}

std::string DriftDistribution::to_string() const {
  switch (kind) {
    case Kind::linear: return "linear:" + format_number(a);
    case Kind::gaussian:
      return "gaussian:" + format_number(a) + ":" + format_number(b);
    case Kind::exponential: return "exponential:" + format_number(a);
    case Kind::constant:
      return "constant:" + format_number(a) + ":" + format_number(b);
  }
  return {};
}

double DriftDistribution::cdf(double x) const {
  switch (kind) {
    case Kind::linear: return std::clamp(a * x, 0.0, 1.0);
    case Kind::gaussian: return 0.5 * std::erfc(-(x - a) / (b * std::sqrt(2.0)));
    case Kind::exponential: return x <= 0 ? 0.0 : 1.0 - std::exp(-a * x);
    case Kind::constant: return x < b ? a : 1.0;
  }
  return 1.0;
}

std::size_t DriftDistribution::region_width() const {
  std::size_t x = 0;
  while (cdf(static_cast<double>(x)) <= kRegionEndCdf) {
    if (++x > kMaxRegionWidth)
      throw InvalidArgument("distribution " + to_string() +
                            " never reaches the region end");
  }
  return x;
}

std::vector<DriftDistribution> benchmark_distributions() {
  using D = DriftDistribution;
  return {D::linear(0.001),      D::linear(0.002),     D::linear(0.005),
          D::linear(0.01),       D::gaussian(20, 10),  D::gaussian(50, 30),
          D::exponential(0.05),  D::exponential(0.1),  D::exponential(0.5),
          D::constant(0.5, 100), D::constant(0.5, 200), D::constant(0.5, 500)};
}

std::vector<ChangePattern> benchmark_patterns() {
  using P = ChangePattern;
  return {P::cp, P::pm, P::re, P::rp, P::sw, P::cf, P::OIR, P::ORI, P::RIO,
          P::ROI};
}

nlohmann::json to_json(const GroundTruth& truth) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& r : truth.regions) regions.push_back({r.start, r.end});
  return {{"log_size", truth.log_size}, {"regions", std::move(regions)}};
}

GroundTruth truth_from_json(const nlohmann::json& j) {
  GroundTruth truth;
  try {
    truth.log_size = j.at("log_size").get<std::size_t>();
    for (const auto& r : j.at("regions")) {
      if (!r.is_array() || r.size() != 2)
        throw ParseError("ground-truth region must be a [t1, t2] pair");
      truth.regions.push_back({r[0].get<std::size_t>(), r[1].get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid ground truth: ") + e.what());
  }
  for (std::size_t k = 0; k < truth.regions.size(); ++k) {
    const auto& r = truth.regions[k];
    if (r.end < r.start || r.end > truth.log_size)
      throw ParseError("ground-truth region out of range");
    if (k > 0 && truth.regions[k - 1].end >= r.start)
      throw ParseError("ground-truth regions must be sorted and separated");
  }
  return truth;
}

GroundTruth expected_truth(const DriftDistribution& dist,
                           std::size_t drift_count) {
  const std::size_t width = dist.region_width();
  GroundTruth truth;
  std::size_t t = 0;
  for (std::size_t d = 0; d < drift_count; ++d) {
    t += kStableBlock;
    truth.regions.push_back({t, t + width});
    t += width;
  }
  truth.log_size = t + kStableBlock;
  return truth;
}

GeneratedLog generate_log(const ProcessTree& base, const ProcessTree& derived,
                          const DriftDistribution& dist,
                          std::size_t drift_count, std::uint64_t seed) {
  if (drift_count == 0) throw InvalidArgument("drift count must be positive");
  validate(base);
  validate(derived);
  if (same_behavior(base, derived))
    throw InvalidArgument("base and derived models have the same variants");
  if (allows_empty_trace(base) || allows_empty_trace(derived))
    throw InvalidArgument("models must not allow empty traces");

  GroundTruth truth = expected_truth(dist, drift_count);
  Rng rng(seed);
  std::vector<Trace> traces;
  traces.reserve(truth.log_size);

  using std::chrono::minutes;
  Timestamp clock = parse_timestamp("2020-01-01T00:00:00Z");
  const ProcessTree* models[2] = {&base, &derived};
  std::size_t current = 0;

  auto emit = [&](const ProcessTree& tree) {
    const Behavior behavior = sample_trace(tree, rng);
    const std::string case_id = "case_" + std::to_string(traces.size() + 1);
    std::vector<Event> events;
    events.reserve(behavior.size());
    for (const auto& activity : behavior) {
      events.push_back({activity, clock, case_id, {}});
      clock += minutes(1);
    }
    if (events.empty())
      throw InvalidArgument("model produced an empty trace: " + to_text(tree));
    traces.emplace_back(case_id, std::move(events));
  };

  for (const auto& region : truth.regions) {
    while (traces.size() < region.start) emit(*models[current]);
    for (std::size_t x = 0; x < region.length(); ++x) {
      const bool fresh = rng.bernoulli(dist.cdf(static_cast<double>(x)));
      emit(*models[fresh ? 1 - current : current]);
    }
    current = 1 - current;
  }
  while (traces.size() < truth.log_size) emit(*models[current]);

  return {EventLog(std::move(traces)), std::move(truth)};
}

}  // namespace crier
