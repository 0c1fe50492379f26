#include <doctest.h>

#include <algorithm>
#include <random>

#include "crier/error.hpp"
#include "crier/model.hpp"
#include "support.hpp"

using namespace crier;
using crier::testing::letters_log;

namespace {

Behavior b(const std::string& letters) {
  Behavior out;
  for (char c : letters) out.emplace_back(1, c);
  return out;
}

DfPair p(char x, char y) { return {std::string(1, x), std::string(1, y)}; }

}  // namespace

TEST_CASE("discovery of the first example window") {
  const auto log = letters_log({"ABCD", "ABCD", "ABCD", "ABCD"});
  const auto m = discover(log.traces());
  CHECK(m.variants() == std::set<Behavior>{b("ABCD")});
  CHECK(m.df_pairs() == std::set<DfPair>{p('A', 'B'), p('B', 'C'), p('C', 'D')});
  CHECK(m.source_size() == 4);
}

TEST_CASE("discovery of a mixed window") {
  const auto log = letters_log({"ABDC", "ABCD", "ABDC", "ABCD"});
  const auto m = discover(log.traces());
  CHECK(m.variants() == std::set<Behavior>{b("ABCD"), b("ABDC")});
  CHECK(m.df_pairs() == std::set<DfPair>{p('A', 'B'), p('B', 'C'), p('C', 'D'),
                                         p('B', 'D'), p('D', 'C')});
}

TEST_CASE("single activity trace has no relations") {
  const auto m = discover(letters_log({"A"}).traces());
  CHECK(m.variants() == std::set<Behavior>{b("A")});
  CHECK(m.df_pairs().empty());
}

TEST_CASE("discovery rejects an empty window") {
  CHECK_THROWS_AS(discover(std::span<const Trace>{}), InvalidArgument);
}

TEST_CASE("model invariants") {
  CHECK_THROWS_AS(BehaviorModel({}, {}, 0), InvalidArgument);
  CHECK_THROWS_AS(BehaviorModel({b("AB")}, {}, 1), InvalidArgument);
  CHECK_NOTHROW(BehaviorModel({b("AB")}, {p('A', 'B'), p('B', 'A')}, 1));
}

TEST_CASE("supports") {
  const auto n1 = discover(letters_log({"ABCD", "ABCD"}).traces());
  CHECK(supports(n1, b("ABCD")));
  CHECK_FALSE(supports(n1, b("ABDC")));
  CHECK_FALSE(supports(n1, b("ABC")));
}

TEST_CASE("behavior equality") {
  const auto n1 = discover(letters_log({"ABCD", "ABCD"}).traces());
  const auto n2 = discover(letters_log({"ABDC", "ABCD"}).traces());
  const auto n2b = discover(letters_log({"ABCD", "ABDC", "ABCD"}).traces());
  CHECK(behavior_equal(n1, n1));
  CHECK_FALSE(behavior_equal(n1, n2));
  CHECK(behavior_equal(n2, n2b));
  CHECK(behavior_equal(n2b, n2));
}

TEST_CASE("discovery is order-insensitive and self-covering") {
  std::mt19937 gen(11);
  const std::vector<std::string> pool = {"AB", "ABC", "ACB", "BCA", "A", "CC"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> traces;
    const int size = 1 + static_cast<int>(gen() % 12);
    for (int k = 0; k < size; ++k) traces.push_back(pool[gen() % pool.size()]);
    auto shuffled = traces;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const auto log = letters_log(traces);
    const auto m = discover(log.traces());
    const auto m2 = discover(letters_log(shuffled).traces());
    CHECK(m.variants() == m2.variants());
    CHECK(m.df_pairs() == m2.df_pairs());
    for (const auto& t : log.traces()) {
      CHECK(supports(m, t.behavior()));
      for (const auto& pair : directly_follows(t.behavior()))
        CHECK(m.df_pairs().contains(pair));
    }
  }
}

TEST_CASE("JSON round trip") {
  const auto m = discover(letters_log({"ABDC", "ABCD"}).traces());
  const auto j = to_json(m);
  CHECK(j.at("variants").size() == 2);
  CHECK(j.at("df_pairs").size() == 5);
  CHECK(model_from_json(j) == m);
  CHECK_THROWS_AS(model_from_json(nlohmann::json{{"variants", 3}}), ParseError);
}
