#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crier/eventlog.hpp"
#include "crier/rng.hpp"

namespace crier {

/// Generative process model. Composite nodes own their children by value.
///
///   activity   leaf with a name
///   sequence   children in order (>= 2)
///   exclusive  one child chosen uniformly (>= 2)
///   parallel   uniform random interleaving of all children (>= 2)
///   loop       children[0] = body, optional children[1] = redo part;
///              body, then with probability 0.3 redo + body again
///   optional   children[0] executed with probability 0.5
struct ProcessTree {
  enum class Kind { activity, sequence, exclusive, parallel, loop, optional };

  Kind kind = Kind::activity;
  std::string name;
  std::vector<ProcessTree> children;

  bool operator==(const ProcessTree&) const = default;

  static ProcessTree activity(std::string name);
  static ProcessTree sequence(std::vector<ProcessTree> children);
  static ProcessTree exclusive(std::vector<ProcessTree> children);
  static ProcessTree parallel(std::vector<ProcessTree> children);
  static ProcessTree loop(ProcessTree body);
  static ProcessTree loop(ProcessTree body, ProcessTree redo);
  static ProcessTree optional(ProcessTree child);

  bool is_leaf() const noexcept { return kind == Kind::activity; }
};

inline constexpr double kLoopRedoProbability = 0.3;
inline constexpr double kOptionalProbability = 0.5;

const char* to_string(ProcessTree::Kind kind) noexcept;

/// Throws InvalidArgument on arity violations or empty activity names.
void validate(const ProcessTree& tree);

std::set<std::string> alphabet(const ProcessTree& tree);

Behavior sample_trace(const ProcessTree& tree, Rng& rng);

/// All behaviors of the tree with every loop repeated at most
/// `max_loop_repeats` extra times. Throws InvalidArgument once more than
/// `max_variants` behaviors would be produced.
std::set<Behavior> enumerate_variants(const ProcessTree& tree,
                                      std::size_t max_loop_repeats = 1,
                                      std::size_t max_variants = 200000);

/// `{"kind":"sequence","children":[...]}`, `{"kind":"activity","name":"A"}`,
/// `{"kind":"loop","body":{...},"redo":{...}}`,
/// `{"kind":"optional","child":{...}}`.
nlohmann::json to_json(const ProcessTree& tree);
ProcessTree tree_from_json(const nlohmann::json& j);
ProcessTree read_tree_file(const std::string& path);

/// Compact text rendering, e.g. `seq(A, and(B, C))`.
std::string to_text(const ProcessTree& tree);

/// Stand-in loan-granting model: 19 activities built from sequences, one
/// parallel block, and one exclusive choice; four variants.
ProcessTree loanlike_tree();

}  // namespace crier
