#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "crier/eventlog.hpp"

namespace crier::testing {

/// One trace per string; each character is an activity. Case ids are
/// "c<k>" and timestamps grow by one minute per event across the log.
inline EventLog letters_log(const std::vector<std::string>& behaviors) {
  using namespace std::chrono;
  const Timestamp origin{sys_days{year{2021} / 1 / 1}};
  std::vector<Trace> traces;
  long minute = 0;
  for (std::size_t k = 0; k < behaviors.size(); ++k) {
    std::vector<Event> events;
    const std::string id = "c" + std::to_string(k + 1);
    for (char a : behaviors[k])
      events.push_back({std::string(1, a), origin + minutes(minute++), id, {}});
    traces.emplace_back(id, std::move(events));
  }
  return EventLog(std::move(traces));
}

inline std::vector<std::string> repeat(const std::string& b, std::size_t n) {
  return std::vector<std::string>(n, b);
}

/// The 27-trace gradual change example: ABCD until trace 8, then a mix of
/// ABCD and ABDC up to trace 16, then ABDC only.
inline std::vector<std::string> gradual_example_behaviors() {
  std::vector<std::string> b = repeat("ABCD", 8);
  for (std::size_t k = 9; k <= 16; ++k) b.push_back(k % 2 ? "ABDC" : "ABCD");
  for (std::size_t k = 17; k <= 27; ++k) b.push_back("ABDC");
  return b;
}

}  // namespace crier::testing
