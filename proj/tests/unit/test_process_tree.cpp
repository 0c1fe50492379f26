#include <doctest.h>

#include "crier/error.hpp"
#include "crier/process_tree.hpp"

using namespace crier;
using T = ProcessTree;

namespace {

T a(const char* name) { return T::activity(name); }

}  // namespace

TEST_CASE("sequence sampling is deterministic") {
  const auto tree = T::sequence({a("A"), a("B"), a("C"), a("D")});
  Rng rng(1);
  for (int k = 0; k < 20; ++k)
    CHECK(sample_trace(tree, rng) == Behavior{"A", "B", "C", "D"});
}

TEST_CASE("parallel block yields both interleavings only") {
  const auto tree = T::sequence({a("A"), a("B"), T::parallel({a("C"), a("D")})});
  Rng rng(2);
  std::set<Behavior> seen;
  for (int k = 0; k < 200; ++k) seen.insert(sample_trace(tree, rng));
  CHECK(seen == std::set<Behavior>{{"A", "B", "C", "D"}, {"A", "B", "D", "C"}});
  CHECK(enumerate_variants(tree) == seen);
}

TEST_CASE("exclusive choice is uniform") {
  const auto tree = T::exclusive({a("X"), a("Y")});
  Rng rng(3);
  int x = 0;
  constexpr int kSamples = 10000;
  for (int k = 0; k < kSamples; ++k)
    if (sample_trace(tree, rng) == Behavior{"X"}) ++x;
  const double share = static_cast<double>(x) / kSamples;
  CHECK(share >= 0.47);
  CHECK(share <= 0.53);
}

TEST_CASE("loop and optional") {
  const auto loop = T::loop(a("A"), a("B"));
  Rng rng(4);
  int repeats = 0;
  constexpr int kSamples = 10000;
  for (int k = 0; k < kSamples; ++k) {
    const auto t = sample_trace(loop, rng);
    REQUIRE(t.size() % 2 == 1);
    CHECK(t.front() == "A");
    CHECK(t.back() == "A");
    if (t.size() > 1) ++repeats;
  }
  CHECK(static_cast<double>(repeats) / kSamples ==
        doctest::Approx(kLoopRedoProbability).epsilon(0.1));
  CHECK(enumerate_variants(loop, 1) ==
        std::set<Behavior>{{"A"}, {"A", "B", "A"}});
  CHECK(enumerate_variants(loop, 2).size() == 3);

  const auto opt = T::sequence({a("A"), T::optional(a("B"))});
  CHECK(enumerate_variants(opt) == std::set<Behavior>{{"A"}, {"A", "B"}});
}

TEST_CASE("enumeration limit") {
  std::vector<T> many;
  for (int k = 0; k < 9; ++k) many.push_back(a(std::string(1, 'A' + k).c_str()));
  const auto wide = T::parallel(many);
  CHECK_THROWS_AS(enumerate_variants(wide, 1, 1000), InvalidArgument);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(T::activity("")), InvalidArgument);
  T bad;
  bad.kind = T::Kind::sequence;
  bad.children = {a("A")};
  CHECK_THROWS_AS(validate(bad), InvalidArgument);
  bad.kind = T::Kind::optional;
  bad.children = {a("A"), a("B")};
  CHECK_THROWS_AS(validate(bad), InvalidArgument);
  CHECK_NOTHROW(validate(loanlike_tree()));
}

TEST_CASE("JSON format") {
  const auto tree = T::sequence(
      {a("A"), T::loop(a("B"), a("C")), T::optional(a("D")),
       T::exclusive({a("E"), T::parallel({a("F"), a("G")})})});
  const auto j = to_json(tree);
  CHECK(j.at("kind") == "sequence");
  CHECK(j.at("children").at(0) == nlohmann::json{{"kind", "activity"}, {"name", "A"}});
  CHECK(j.at("children").at(1).contains("body"));
  CHECK(j.at("children").at(1).contains("redo"));
  CHECK(j.at("children").at(2).contains("child"));
  CHECK(tree_from_json(j) == tree);
  CHECK_THROWS_AS(tree_from_json(nlohmann::json{{"kind", "bogus"}}), ParseError);
  CHECK_THROWS_AS(tree_from_json(nlohmann::json{{"kind", "sequence"}}), ParseError);
  CHECK(to_text(tree) == "seq(A, loop(B, C), opt(D), xor(E, and(F, G)))");
}

TEST_CASE("stand-in loan model") {
  const auto tree = loanlike_tree();
  CHECK(alphabet(tree).size() == 19);
  CHECK(enumerate_variants(tree).size() == 4);
  CHECK(read_tree_file("loanlike") == tree);
  CHECK(read_tree_file(std::string(CRIER_SOURCE_DIR) + "/data/loanlike.json") == tree);
  CHECK_THROWS_AS(read_tree_file("/nonexistent/tree.json"), IoError);
}
