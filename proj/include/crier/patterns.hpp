#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crier/process_tree.hpp"
#include "crier/rng.hpp"

namespace crier {

enum class ChangePattern {
  cp,  ///< duplicate a fragment
  pm,  ///< move a fragment into or out of a parallel block
  re,  ///< insert or remove a fragment
  rp,  ///< substitute a fragment with a fresh activity
  sw,  ///< swap two fragments of a sequence
  cf,  ///< sequential pair to exclusive choice, or the reverse
  cb,  ///< make a fragment skippable
  lp,  ///< wrap a fragment in a loop
  cd,  ///< sequentialize parallel fragments
  pl,  ///< parallelize sequential fragments
  OIR,
  ORI,
  RIO,
  ROI,
};

const char* to_string(ChangePattern pattern) noexcept;
/// Accepts the lower-case primitive codes and the upper-case composites.
ChangePattern parse_pattern(std::string_view code);

/// Primitive steps of a pattern in application order; a primitive expands to
/// itself.
std::vector<ChangePattern> expand(ChangePattern pattern);

/// Child indices from the root.
using NodePath = std::vector<std::size_t>;

const ProcessTree& node_at(const ProcessTree& tree, const NodePath& path);

/// Exchanges two disjoint subtrees.
ProcessTree swap_fragments(const ProcessTree& tree, const NodePath& a,
                           const NodePath& b);

/// Flattens nested nodes of the same associative kind and replaces
/// single-child sequences, choices and parallel blocks by their child.
ProcessTree normalize(ProcessTree tree);

/// "New activity k" with the smallest k not already used in the tree.
std::string fresh_activity(const ProcessTree& tree);

/// Applies the pattern to a randomly chosen eligible fragment. Candidates
/// are listed in preorder and drawn from `rng` until one changes the
/// model's bounded variant set. Composites apply their primitives in order,
/// sharing `rng`. Throws InvalidArgument when no candidate qualifies.
ProcessTree apply_pattern(const ProcessTree& tree, ChangePattern pattern,
                          Rng& rng);

}  // namespace crier
