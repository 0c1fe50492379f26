#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crier/evaluate.hpp"
#include "crier/process_tree.hpp"

namespace crier {

struct BenchConfig {
  std::uint64_t seed = 0;
  std::size_t drifts = 9;
  DetectorConfig detector;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t jobs = 0;
  ProcessTree base = loanlike_tree();
};

/// Derived model for one benchmark pattern, reproducible from the seed.
ProcessTree benchmark_model(const ProcessTree& base, ChangePattern pattern,
                            std::uint64_t seed);

/// Generates, detects, and scores every pattern × distribution log. Rows
/// come back in pattern-major order regardless of the thread count.
std::vector<AggregateRow> run_benchmark(const BenchConfig& config);

}  // namespace crier
