#include "crier/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace crier {

ProcessTree benchmark_model(const ProcessTree& base, ChangePattern pattern,
                            std::uint64_t seed) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(pattern)));
  return apply_pattern(base, pattern, rng);
}

std::vector<AggregateRow> run_benchmark(const BenchConfig& config) {
  config.detector.validate();
  const auto patterns = benchmark_patterns();
  const auto distributions = benchmark_distributions();

  std::vector<ProcessTree> derived;
  derived.reserve(patterns.size());
  for (auto p : patterns)
    derived.push_back(benchmark_model(config.base, p, config.seed));

  const std::size_t total = patterns.size() * distributions.size();
  std::vector<AggregateRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      try {
        const std::size_t pi = job / distributions.size();
        const std::size_t di = job % distributions.size();
        const auto generated =
            generate_log(config.base, derived[pi], distributions[di],
                         config.drifts, derive_seed(config.seed, 100 + job));
        const auto report = detect(generated.log, config.detector);
        char name[32];
        std::snprintf(name, sizeof name, "%s_d%02zu", to_string(patterns[pi]),
                      di + 1);
        rows[job] = {name, to_string(patterns[pi]),
                     distributions[di].to_string(),
                     evaluate(report, generated.truth)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::size_t jobs = config.jobs ? config.jobs
                                 : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, total);
  std::vector<std::thread> threads;
  for (std::size_t k = 1; k < jobs; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace crier
