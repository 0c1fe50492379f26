#include <doctest.h>

#include <cmath>
#include <sstream>

#include "crier/error.hpp"
#include "crier/loggen.hpp"

using namespace crier;
using D = DriftDistribution;

namespace {

struct Geometry {
  D dist;
  std::size_t width;
  std::size_t log_size;
};

const std::vector<Geometry> kTable = {
    {D::linear(0.001), 1000, 14000},  {D::linear(0.002), 500, 9500},
    {D::linear(0.005), 200, 6800},    {D::linear(0.01), 100, 5900},
    {D::gaussian(20, 10), 51, 5459},  {D::gaussian(50, 30), 143, 6287},
    {D::exponential(0.05), 139, 6251}, {D::exponential(0.1), 70, 5630},
    {D::exponential(0.5), 14, 5126},  {D::constant(0.5, 100), 100, 5900},
    {D::constant(0.5, 200), 200, 6800}, {D::constant(0.5, 500), 500, 9500},
};

ProcessTree two_models_base() {
  return ProcessTree::sequence(
      {ProcessTree::activity("A"), ProcessTree::activity("B")});
}

ProcessTree two_models_derived() {
  return ProcessTree::sequence(
      {ProcessTree::activity("B"), ProcessTree::activity("A")});
}

}  // namespace

TEST_CASE("benchmark grid") {
  const auto dists = benchmark_distributions();
  REQUIRE(dists.size() == kTable.size());
  for (std::size_t k = 0; k < dists.size(); ++k) CHECK(dists[k] == kTable[k].dist);
  CHECK(benchmark_patterns().size() == 10);
}

TEST_CASE("region geometry of the benchmark distributions") {
  for (const auto& g : kTable) {
    CAPTURE(g.dist.to_string());
    CHECK(g.dist.region_width() == g.width);
    const auto truth = expected_truth(g.dist, 9);
    CHECK(truth.log_size == g.log_size);
    REQUIRE(truth.regions.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) {
      const std::size_t start = 500 + k * (500 + g.width);
      CHECK(truth.regions[k] == Interval{start, start + g.width});
    }
  }
  const auto slow = expected_truth(D::linear(0.001), 9);
  CHECK(slow.regions[1] == Interval{2000, 3000});
  CHECK(slow.regions[8] == Interval{12500, 13500});
  const auto gauss = expected_truth(D::gaussian(50, 30), 9);
  CHECK(gauss.regions[8] == Interval{5644, 5787});
  const auto fast = expected_truth(D::exponential(0.5), 9);
  CHECK(fast.regions[4] == Interval{2556, 2570});
}

TEST_CASE("generated logs follow the expected geometry") {
  for (const auto& g : kTable) {
    CAPTURE(g.dist.to_string());
    const auto out = generate_log(two_models_base(), two_models_derived(),
                                  g.dist, 9, 11);
    CHECK(out.truth == expected_truth(g.dist, 9));
    CHECK(out.log.size() == g.log_size);
  }
}

TEST_CASE("cdf shapes") {
  CHECK(D::linear(0.01).cdf(50) == doctest::Approx(0.5));
  CHECK(D::linear(0.01).cdf(200) == 1.0);
  CHECK(D::exponential(0.1).cdf(0) == 0.0);
  CHECK(D::gaussian(20, 10).cdf(20) == doctest::Approx(0.5));
  CHECK(D::constant(0.5, 200).cdf(199) == 0.5);
  CHECK(D::constant(0.5, 200).cdf(200) == 1.0);
  for (const auto& g : kTable) {
    double last = 0.0;
    for (int x = 0; x < 2000; x += 7) {
      const double c = g.dist.cdf(x);
      CHECK(c >= last);
      last = c;
    }
  }
}

TEST_CASE("distribution flags") {
  CHECK(D::parse("linear:0.01") == D::linear(0.01));
  CHECK(D::parse("gaussian:20:10") == D::gaussian(20, 10));
  CHECK(D::parse("exponential:0.5") == D::exponential(0.5));
  CHECK(D::parse("constant:0.5:200") == D::constant(0.5, 200));
  CHECK(D::constant(0.5, 500).to_string() == "constant:0.5:500");
  CHECK(D::linear(0.001).to_string() == "linear:0.001");
  CHECK(D::gaussian(50, 30).to_string() == "gaussian:50:30");
  for (const auto& g : kTable) CHECK(D::parse(g.dist.to_string()) == g.dist);
  CHECK_THROWS_AS(D::parse("linear"), InvalidArgument);
  CHECK_THROWS_AS(D::parse("linear:abc"), InvalidArgument);
  CHECK_THROWS_AS(D::parse("cubic:1"), InvalidArgument);
  CHECK_THROWS_AS(D::parse("constant:1.5:10"), InvalidArgument);
  CHECK_THROWS_AS(D::linear(0.0), InvalidArgument);
}

TEST_CASE("same seed gives byte-identical output") {
  const auto base = loanlike_tree();
  Rng rng(3);
  const auto derived = apply_pattern(base, ChangePattern::re, rng);
  const auto a = generate_log(base, derived, D::constant(0.5, 200), 9, 99);
  const auto b = generate_log(base, derived, D::constant(0.5, 200), 9, 99);
  std::ostringstream ca, cb;
  write_csv(a.log, ca);
  write_csv(b.log, cb);
  CHECK(ca.str() == cb.str());
  CHECK(to_json(a.truth).dump() == to_json(b.truth).dump());
  const auto c = generate_log(base, derived, D::constant(0.5, 200), 9, 100);
  std::ostringstream cc;
  write_csv(c.log, cc);
  CHECK(cc.str() != ca.str());
}

TEST_CASE("regions mix exactly the two models") {
  const auto base = loanlike_tree();
  Rng rng(5);
  const auto derived = apply_pattern(base, ChangePattern::cf, rng);
  const auto old_variants = enumerate_variants(base);
  const auto new_variants = enumerate_variants(derived);
  const auto out = generate_log(base, derived, D::linear(0.005), 9, 17);
  for (const auto& region : out.truth.regions)
    for (std::size_t i = region.start; i < region.end; ++i) {
      const auto& b = out.log[i].behavior();
      CHECK((old_variants.contains(b) || new_variants.contains(b)));
    }
  // Stable blocks alternate between the models.
  for (std::size_t i = 0; i < 500; ++i)
    CHECK(old_variants.contains(out.log[i].behavior()));
  const auto after_first = out.truth.regions[0].end;
  for (std::size_t i = after_first; i < after_first + 500; ++i)
    CHECK(new_variants.contains(out.log[i].behavior()));
}

TEST_CASE("constant region share is binomial") {
  const auto base = two_models_base();
  const auto derived = two_models_derived();
  const Behavior derived_behavior{"B", "A"};
  const Behavior base_behavior{"A", "B"};
  std::size_t from_new = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = generate_log(base, derived, D::constant(0.5, 200), 9, seed);
    for (std::size_t r = 0; r < out.truth.regions.size(); ++r) {
      const auto& region = out.truth.regions[r];
      CHECK(region.length() == 200);
      const Behavior& incoming = r % 2 == 0 ? derived_behavior : base_behavior;
      for (std::size_t i = region.start; i < region.end; ++i) {
        ++total;
        if (out.log[i].behavior() == incoming) ++from_new;
      }
    }
  }
  // 36000 draws at p = 0.5: four standard deviations is about 380.
  const double expected = 0.5 * static_cast<double>(total);
  CHECK(std::fabs(static_cast<double>(from_new) - expected) < 4 * std::sqrt(total * 0.25));
}

TEST_CASE("synthetic trace identity") {
  const auto out = generate_log(two_models_base(), two_models_derived(),
                                D::exponential(0.5), 1, 1);
  CHECK(out.log[0].case_id() == "case_1");
  CHECK(out.log[1].case_id() == "case_2");
  CHECK(format_timestamp(out.log[0].events()[0].timestamp) == "2020-01-01T00:00:00Z");
  CHECK(format_timestamp(out.log[0].events()[1].timestamp) == "2020-01-01T00:01:00Z");
  CHECK(format_timestamp(out.log[1].events()[0].timestamp) == "2020-01-01T00:02:00Z");
}

TEST_CASE("generator preconditions") {
  const auto base = two_models_base();
  CHECK_THROWS_AS(generate_log(base, base, D::linear(0.01), 1, 0), InvalidArgument);
  CHECK_THROWS_AS(generate_log(base, two_models_derived(), D::linear(0.01), 0, 0),
                  InvalidArgument);
  const auto skippable = ProcessTree::optional(ProcessTree::activity("A"));
  CHECK_THROWS_AS(generate_log(base, skippable, D::linear(0.01), 1, 0),
                  InvalidArgument);
}

TEST_CASE("ground truth JSON") {
  const auto truth = expected_truth(D::constant(0.5, 200), 2);
  const auto j = to_json(truth);
  CHECK(j.dump() == R"({"log_size":1900,"regions":[[500,700],[1200,1400]]})");
  CHECK(truth_from_json(j) == truth);
  CHECK_THROWS_AS(truth_from_json(nlohmann::json::parse(
                      R"({"log_size":10,"regions":[[5,3]]})")),
                  ParseError);
}
