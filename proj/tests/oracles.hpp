#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "crier/conformance.hpp"
#include "support.hpp"

namespace crier::testing {

/// Two-sided p-value by direct integration of the Student t density.
inline double integrated_p(double t, double df) {
  const double log_norm = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                          0.5 * std::log(df * M_PI);
  auto density = [&](double x) {
    return std::exp(log_norm - (df + 1) / 2 * std::log1p(x * x / df));
  };
  const double inner =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          density, 0.0, std::fabs(t), 20, 1e-14);
  return 1.0 - 2.0 * inner;
}

struct ChangeTally {
  int start_cases = 0;
  int start_holds = 0;
  int end_cases = 0;
  int end_holds = 0;
};

/// Random disjoint behavior sets: Bc survives the whole change, Bp fades out
/// between t1 and t2, Bn appears at t1. Each segment holds every behavior of
/// the sets active in it at least once, in shuffled order. Counts how often
/// fitness drops and precision holds at t1 against the model before t1, and
/// how often precision drops after t2 against the model of the change when
/// Bp owns a relation that Bc and Bn lack.
inline ChangeTally gradual_change_properties(int seeds) {
  ChangeTally tally;
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 gen(seed);
    auto draw = [&](std::size_t bound) {
      return static_cast<std::size_t>(gen() % bound);
    };
    std::set<std::string> seen;
    std::vector<std::string> distinct;
    const std::size_t wanted = 3 + draw(6);
    while (distinct.size() < wanted) {
      std::string s;
      const std::size_t len = 2 + draw(4);
      for (std::size_t k = 0; k < len; ++k)
        s.push_back(static_cast<char>('A' + draw(6)));
      if (seen.insert(s).second) distinct.push_back(s);
    }
    const std::size_t n_p = 1 + draw(distinct.size() - 2);
    const std::size_t n_n = 1 + draw(distinct.size() - n_p - 1);
    const std::vector<std::string> bp(distinct.begin(), distinct.begin() + n_p);
    const std::vector<std::string> bn(distinct.begin() + n_p,
                                      distinct.begin() + n_p + n_n);
    const std::vector<std::string> bc(distinct.begin() + n_p + n_n,
                                      distinct.end());

    auto segment = [&](std::vector<const std::vector<std::string>*> sets) {
      std::vector<std::string> out;
      for (const auto* set : sets)
        for (const auto& v : *set)
          for (std::size_t r = 0, copies = 1 + draw(3); r < copies; ++r)
            out.push_back(v);
      std::shuffle(out.begin(), out.end(), gen);
      return out;
    };
    const auto before = letters_log(segment({&bc, &bp}));
    const auto during = letters_log(segment({&bc, &bp, &bn}));
    const auto after = letters_log(segment({&bc, &bn}));
    const auto n_before = discover(before.traces());
    const auto n_during = discover(during.traces());

    ++tally.start_cases;
    if (fitness(before.traces(), n_before).value() >
            fitness(during.traces(), n_before).value() &&
        precision(before.traces(), n_before) ==
            precision(during.traces(), n_before))
      ++tally.start_holds;

    auto pairs_of = [](const std::string& v) {
      std::set<DfPair> out;
      for (std::size_t k = 1; k < v.size(); ++k)
        out.emplace(std::string(1, v[k - 1]), std::string(1, v[k]));
      return out;
    };
    std::set<DfPair> kept;
    for (const auto* set : {&bc, &bn})
      for (const auto& v : *set)
        for (const auto& pr : pairs_of(v)) kept.insert(pr);
    bool bp_owns_a_relation = false;
    for (const auto& v : bp)
      for (const auto& pr : pairs_of(v))
        if (!kept.contains(pr)) bp_owns_a_relation = true;
    if (!bp_owns_a_relation) continue;

    ++tally.end_cases;
    if (precision(during.traces(), n_during).value() >
        precision(after.traces(), n_during).value())
      ++tally.end_holds;
  }
  return tally;
}

}  // namespace crier::testing
