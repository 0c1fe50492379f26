#include "crier/patterns.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "crier/error.hpp"

namespace crier {

namespace {

using Kind = ProcessTree::Kind;
using Edit = std::function<ProcessTree(const ProcessTree&)>;

constexpr std::array<std::pair<ChangePattern, const char*>, 14> kCodes{{
    {ChangePattern::cp, "cp"},   {ChangePattern::pm, "pm"},
    {ChangePattern::re, "re"},   {ChangePattern::rp, "rp"},
    {ChangePattern::sw, "sw"},   {ChangePattern::cf, "cf"},
    {ChangePattern::cb, "cb"},   {ChangePattern::lp, "lp"},
    {ChangePattern::cd, "cd"},   {ChangePattern::pl, "pl"},
    {ChangePattern::OIR, "OIR"}, {ChangePattern::ORI, "ORI"},
    {ChangePattern::RIO, "RIO"}, {ChangePattern::ROI, "ROI"},
}};

ProcessTree& mutable_at(ProcessTree& tree, const NodePath& path) {
  ProcessTree* node = &tree;
  for (std::size_t k : path) node = &node->children.at(k);
  return *node;
}

void collect_paths(const ProcessTree& tree, NodePath& prefix,
                   std::vector<NodePath>& out) {
  out.push_back(prefix);
  for (std::size_t k = 0; k < tree.children.size(); ++k) {
    prefix.push_back(k);
    collect_paths(tree.children[k], prefix, out);
    prefix.pop_back();
  }
}

std::vector<NodePath> preorder(const ProcessTree& tree) {
  std::vector<NodePath> out;
  NodePath prefix;
  collect_paths(tree, prefix, out);
  return out;
}

NodePath parent_of(const NodePath& path) {
  return NodePath(path.begin(), path.end() - 1);
}

ProcessTree replace_at(const ProcessTree& tree, const NodePath& path,
                       ProcessTree replacement) {
  ProcessTree out = tree;
  mutable_at(out, path) = std::move(replacement);
  return out;
}

bool is_prefix(const NodePath& a, const NodePath& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// Every candidate is an edit closure over a copy of its path, listed in a
// fixed preorder so that the random pick is reproducible.
std::vector<Edit> candidates(const ProcessTree& tree, ChangePattern pattern) {
  const auto paths = preorder(tree);
  std::vector<Edit> out;

  auto each_non_root = [&](auto&& fn) {
    for (const auto& p : paths)
      if (!p.empty()) fn(p);
  };
  auto each_kind = [&](Kind kind, auto&& fn) {
    for (const auto& p : paths)
      if (node_at(tree, p).kind == kind) fn(p);
  };

  switch (pattern) {
    case ChangePattern::cp:
      each_non_root([&](const NodePath& p) {
        out.push_back([p](const ProcessTree& t) {
          const auto& f = node_at(t, p);
          return replace_at(t, p, ProcessTree::sequence({f, f}));
        });
      });
      break;

    case ChangePattern::pm:
      // Into: a sequence child joins a parallel sibling.
      each_kind(Kind::sequence, [&](const NodePath& s) {
        const auto& seq = node_at(tree, s);
        for (std::size_t j = 0; j < seq.children.size(); ++j) {
          if (seq.children[j].kind != Kind::parallel) continue;
          for (std::size_t i = 0; i < seq.children.size(); ++i) {
            if (i == j) continue;
            out.push_back([s, i, j](const ProcessTree& t) {
              ProcessTree copy = t;
              auto& sq = mutable_at(copy, s);
              ProcessTree moved = sq.children[i];
              sq.children[j].children.push_back(std::move(moved));
              sq.children.erase(sq.children.begin() +
                                static_cast<std::ptrdiff_t>(i));
              return copy;
            });
          }
        }
      });
      // Out of: a parallel branch placed after its block in the sequence.
      each_kind(Kind::parallel, [&](const NodePath& p) {
        if (p.empty()) return;
        const NodePath s = parent_of(p);
        if (node_at(tree, s).kind != Kind::sequence) return;
        const std::size_t pos = p.back();
        for (std::size_t b = 0; b < node_at(tree, p).children.size(); ++b) {
          out.push_back([s, pos, b](const ProcessTree& t) {
            ProcessTree copy = t;
            auto& sq = mutable_at(copy, s);
            auto& par = sq.children[pos];
            ProcessTree moved = par.children[b];
            par.children.erase(par.children.begin() +
                               static_cast<std::ptrdiff_t>(b));
            sq.children.insert(sq.children.begin() +
                                   static_cast<std::ptrdiff_t>(pos + 1),
                               std::move(moved));
            return copy;
          });
        }
      });
      break;

    case ChangePattern::re:
      each_kind(Kind::sequence, [&](const NodePath& s) {
        const std::size_t n = node_at(tree, s).children.size();
        // Serial insert: between two directly succeeding children.
        for (std::size_t i = 1; i < n; ++i)
          out.push_back([s, i](const ProcessTree& t) {
            ProcessTree copy = t;
            auto& sq = mutable_at(copy, s);
            sq.children.insert(sq.children.begin() +
                                   static_cast<std::ptrdiff_t>(i),
                               ProcessTree::activity(fresh_activity(t)));
            return copy;
          });
        // The process start and end activities stay in place.
        const std::size_t lo = s.empty() ? 1 : 0;
        const std::size_t hi = s.empty() ? n - 1 : n;
        for (std::size_t i = lo; i < hi; ++i)
          out.push_back([s, i](const ProcessTree& t) {
            ProcessTree copy = t;
            auto& sq = mutable_at(copy, s);
            sq.children.erase(sq.children.begin() +
                              static_cast<std::ptrdiff_t>(i));
            return copy;
          });
      });
      break;

    case ChangePattern::rp:
      each_non_root([&](const NodePath& p) {
        out.push_back([p](const ProcessTree& t) {
          return replace_at(t, p, ProcessTree::activity(fresh_activity(t)));
        });
      });
      break;

    case ChangePattern::sw:
      each_kind(Kind::sequence, [&](const NodePath& s) {
        const std::size_t n = node_at(tree, s).children.size();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) {
            NodePath a = s, b = s;
            a.push_back(i);
            b.push_back(j);
            out.push_back([a, b](const ProcessTree& t) {
              return swap_fragments(t, a, b);
            });
          }
      });
      break;

    case ChangePattern::cf:
      each_kind(Kind::sequence, [&](const NodePath& s) {
        const std::size_t n = node_at(tree, s).children.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
          out.push_back([s, i](const ProcessTree& t) {
            ProcessTree copy = t;
            auto& sq = mutable_at(copy, s);
            ProcessTree choice = ProcessTree::exclusive(
                {sq.children[i], sq.children[i + 1]});
            sq.children[i] = std::move(choice);
            sq.children.erase(sq.children.begin() +
                              static_cast<std::ptrdiff_t>(i + 1));
            return copy;
          });
      });
      each_kind(Kind::exclusive, [&](const NodePath& x) {
        out.push_back([x](const ProcessTree& t) {
          ProcessTree node = node_at(t, x);
          node.kind = Kind::sequence;
          return replace_at(t, x, std::move(node));
        });
      });
      break;

    case ChangePattern::cb:
      each_non_root([&](const NodePath& p) {
        if (node_at(tree, p).kind == Kind::optional) return;
        out.push_back([p](const ProcessTree& t) {
          return replace_at(t, p, ProcessTree::optional(node_at(t, p)));
        });
      });
      break;

    case ChangePattern::lp:
      each_non_root([&](const NodePath& p) {
        if (node_at(tree, p).kind == Kind::loop) return;
        out.push_back([p](const ProcessTree& t) {
          return replace_at(t, p, ProcessTree::loop(node_at(t, p)));
        });
      });
      break;

    case ChangePattern::cd:
    case ChangePattern::pl: {
      const Kind from =
          pattern == ChangePattern::cd ? Kind::parallel : Kind::sequence;
      const Kind to =
          pattern == ChangePattern::cd ? Kind::sequence : Kind::parallel;
      each_kind(from, [&](const NodePath& s) {
        const std::size_t n = node_at(tree, s).children.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
          out.push_back([s, i, to](const ProcessTree& t) {
            ProcessTree copy = t;
            auto& block = mutable_at(copy, s);
            if (block.children.size() == 2) {
              block.kind = to;
              return copy;
            }
            ProcessTree pair{to, {}, {block.children[i], block.children[i + 1]}};
            block.children[i] = std::move(pair);
            block.children.erase(block.children.begin() +
                                 static_cast<std::ptrdiff_t>(i + 1));
            return copy;
          });
      });
      break;
    }

    default:
      break;
  }
  return out;
}

std::optional<std::set<Behavior>> bounded_variants(const ProcessTree& tree) {
  try {
    return enumerate_variants(tree);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

bool changes_behavior(const ProcessTree& before,
                      const std::optional<std::set<Behavior>>& before_variants,
                      const ProcessTree& after) {
  if (before == after) return false;
  const auto after_variants = bounded_variants(after);
  if (after_variants && after_variants->count(Behavior{})) return false;
  if (!before_variants || !after_variants) return true;
  return *before_variants != *after_variants;
}

bool is_valid(const ProcessTree& tree) {
  try {
    validate(tree);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

ProcessTree apply_primitive(const ProcessTree& tree, ChangePattern pattern,
                            Rng& rng) {
  auto pool = candidates(tree, pattern);
  const auto original = bounded_variants(tree);
  while (!pool.empty()) {
    const std::size_t pick = rng.below(pool.size());
    ProcessTree result = normalize(pool[pick](tree));
    if (is_valid(result) && changes_behavior(tree, original, result))
      return result;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  throw InvalidArgument(std::string("no fragment eligible for pattern ") +
                        to_string(pattern) + " in " + to_text(tree));
}

}  // namespace

const char* to_string(ChangePattern pattern) noexcept {
  for (const auto& [p, code] : kCodes)
    if (p == pattern) return code;
  return "?";
}

ChangePattern parse_pattern(std::string_view code) {
  for (const auto& [p, name] : kCodes)
    if (code == name) return p;
  throw InvalidArgument("unknown change pattern '" + std::string(code) + "'");
}

std::vector<ChangePattern> expand(ChangePattern pattern) {
  using P = ChangePattern;
  switch (pattern) {
    case P::OIR: return {P::lp, P::re, P::cd};
    case P::ORI: return {P::lp, P::pl, P::re};
    case P::RIO: return {P::cf, P::cp, P::cb};
    case P::ROI: return {P::pl, P::lp, P::rp};
    default: return {pattern};
  }
}

const ProcessTree& node_at(const ProcessTree& tree, const NodePath& path) {
  const ProcessTree* node = &tree;
  for (std::size_t k : path) {
    if (k >= node->children.size())
      throw InvalidArgument("node path leaves the tree");
    node = &node->children[k];
  }
  return *node;
}

ProcessTree swap_fragments(const ProcessTree& tree, const NodePath& a,
                           const NodePath& b) {
  if (is_prefix(a, b) || is_prefix(b, a))
    throw InvalidArgument("swapped fragments must be disjoint");
  ProcessTree out = tree;
  std::swap(mutable_at(out, a), mutable_at(out, b));
  return out;
}

ProcessTree normalize(ProcessTree tree) {
  for (auto& c : tree.children) c = normalize(std::move(c));
  const bool associative = tree.kind == Kind::sequence ||
                           tree.kind == Kind::exclusive ||
                           tree.kind == Kind::parallel;
  if (!associative) return tree;
  std::vector<ProcessTree> flat;
  for (auto& c : tree.children) {
    if (c.kind == tree.kind) {
      for (auto& g : c.children) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(c));
    }
  }
  tree.children = std::move(flat);
  if (tree.children.size() == 1) return std::move(tree.children.front());
  return tree;
}

std::string fresh_activity(const ProcessTree& tree) {
  const auto used = alphabet(tree);
  for (std::size_t k = 1;; ++k) {
    std::string name = "New activity " + std::to_string(k);
    if (!used.count(name)) return name;
  }
}

ProcessTree apply_pattern(const ProcessTree& tree, ChangePattern pattern,
                          Rng& rng) {
  ProcessTree current = tree;
  for (ChangePattern step : expand(pattern))
    current = apply_primitive(current, step, rng);
  if (!changes_behavior(tree, bounded_variants(tree), current))
    throw InvalidArgument(std::string("pattern ") + to_string(pattern) +
                          " left the model's behavior unchanged");
  return current;
}

}  // namespace crier
