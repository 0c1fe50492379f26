#include "crier/process_tree.hpp"

#include <fstream>

#include "crier/error.hpp"

namespace crier {

using Kind = ProcessTree::Kind;

ProcessTree ProcessTree::activity(std::string name) {
  return {Kind::activity, std::move(name), {}};
}
ProcessTree ProcessTree::sequence(std::vector<ProcessTree> children) {
  return {Kind::sequence, {}, std::move(children)};
}
ProcessTree ProcessTree::exclusive(std::vector<ProcessTree> children) {
  return {Kind::exclusive, {}, std::move(children)};
}
ProcessTree ProcessTree::parallel(std::vector<ProcessTree> children) {
  return {Kind::parallel, {}, std::move(children)};
}
ProcessTree ProcessTree::loop(ProcessTree body) {
  return {Kind::loop, {}, {std::move(body)}};
}
ProcessTree ProcessTree::loop(ProcessTree body, ProcessTree redo) {
  return {Kind::loop, {}, {std::move(body), std::move(redo)}};
}
ProcessTree ProcessTree::optional(ProcessTree child) {
  return {Kind::optional, {}, {std::move(child)}};
}

const char* to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::activity: return "activity";
    case Kind::sequence: return "sequence";
    case Kind::exclusive: return "exclusive";
    case Kind::parallel: return "parallel";
    case Kind::loop: return "loop";
    case Kind::optional: return "optional";
  }
  return "?";
}

void validate(const ProcessTree& tree) {
  switch (tree.kind) {
    case Kind::activity:
      if (tree.name.empty()) throw InvalidArgument("activity without a name");
      if (!tree.children.empty())
        throw InvalidArgument("activity '" + tree.name + "' has children");
      return;
    case Kind::sequence:
    case Kind::exclusive:
    case Kind::parallel:
      if (tree.children.size() < 2)
        throw InvalidArgument(std::string(to_string(tree.kind)) +
                              " needs at least two children");
      break;
    case Kind::loop:
      if (tree.children.empty() || tree.children.size() > 2)
        throw InvalidArgument("loop needs a body and at most one redo part");
      break;
    case Kind::optional:
      if (tree.children.size() != 1)
        throw InvalidArgument("optional needs exactly one child");
      break;
  }
  for (const auto& c : tree.children) validate(c);
}

namespace {

void collect_alphabet(const ProcessTree& tree, std::set<std::string>& out) {
  if (tree.is_leaf()) out.insert(tree.name);
  for (const auto& c : tree.children) collect_alphabet(c, out);
}

void sample_into(const ProcessTree& tree, Rng& rng, Behavior& out) {
  switch (tree.kind) {
    case Kind::activity:
      out.push_back(tree.name);
      return;
    case Kind::sequence:
      for (const auto& c : tree.children) sample_into(c, rng, out);
      return;
    case Kind::exclusive:
      sample_into(tree.children[rng.below(tree.children.size())], rng, out);
      return;
    case Kind::parallel: {
      std::vector<Behavior> parts(tree.children.size());
      std::size_t remaining = 0;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        sample_into(tree.children[k], rng, parts[k]);
        remaining += parts[k].size();
      }
      // Drawing the next branch with probability proportional to its
      // remaining length makes every interleaving equally likely.
      std::vector<std::size_t> next(parts.size(), 0);
      while (remaining > 0) {
        std::size_t pick = rng.below(remaining);
        std::size_t k = 0;
        for (;; ++k) {
          const std::size_t left = parts[k].size() - next[k];
          if (pick < left) break;
          pick -= left;
        }
        out.push_back(parts[k][next[k]++]);
        --remaining;
      }
      return;
    }
    case Kind::loop:
      sample_into(tree.children[0], rng, out);
      while (rng.bernoulli(kLoopRedoProbability)) {
        if (tree.children.size() > 1) sample_into(tree.children[1], rng, out);
        sample_into(tree.children[0], rng, out);
      }
      return;
    case Kind::optional:
      if (rng.bernoulli(kOptionalProbability))
        sample_into(tree.children[0], rng, out);
      return;
  }
}

class Enumerator {
 public:
  Enumerator(std::size_t repeats, std::size_t limit)
      : repeats_(repeats), limit_(limit) {}

  std::set<Behavior> run(const ProcessTree& tree) {
    switch (tree.kind) {
      case Kind::activity:
        return {Behavior{tree.name}};
      case Kind::sequence: {
        std::set<Behavior> acc{Behavior{}};
        for (const auto& c : tree.children) acc = concat(acc, run(c));
        return acc;
      }
      case Kind::exclusive: {
        std::set<Behavior> acc;
        for (const auto& c : tree.children) {
          auto part = run(c);
          acc.insert(part.begin(), part.end());
          check(acc.size());
        }
        return acc;
      }
      case Kind::parallel: {
        std::set<Behavior> acc{Behavior{}};
        for (const auto& c : tree.children) {
          const auto part = run(c);
          std::set<Behavior> next;
          for (const auto& a : acc)
            for (const auto& b : part) shuffle(a, b, next);
          acc = std::move(next);
        }
        return acc;
      }
      case Kind::loop: {
        const auto body = run(tree.children[0]);
        const auto redo = tree.children.size() > 1 ? run(tree.children[1])
                                                   : std::set<Behavior>{{}};
        std::set<Behavior> acc = body;
        std::set<Behavior> frontier = body;
        for (std::size_t r = 0; r < repeats_; ++r) {
          frontier = concat(concat(frontier, redo), body);
          acc.insert(frontier.begin(), frontier.end());
          check(acc.size());
        }
        return acc;
      }
      case Kind::optional: {
        auto acc = run(tree.children[0]);
        acc.insert(Behavior{});
        return acc;
      }
    }
    return {};
  }

 private:
  void check(std::size_t size) const {
    if (size > limit_)
      throw InvalidArgument("tree has more than " + std::to_string(limit_) +
                            " bounded variants");
  }

  std::set<Behavior> concat(const std::set<Behavior>& left,
                            const std::set<Behavior>& right) const {
    std::set<Behavior> out;
    for (const auto& a : left)
      for (const auto& b : right) {
        Behavior joined = a;
        joined.insert(joined.end(), b.begin(), b.end());
        out.insert(std::move(joined));
        check(out.size());
      }
    return out;
  }

  void shuffle(const Behavior& a, const Behavior& b,
               std::set<Behavior>& out) const {
    Behavior current;
    current.reserve(a.size() + b.size());
    shuffle_rec(a, 0, b, 0, current, out);
  }

  void shuffle_rec(const Behavior& a, std::size_t i, const Behavior& b,
                   std::size_t j, Behavior& current,
                   std::set<Behavior>& out) const {
    if (i == a.size() && j == b.size()) {
      out.insert(current);
      check(out.size());
      return;
    }
    if (i < a.size()) {
      current.push_back(a[i]);
      shuffle_rec(a, i + 1, b, j, current, out);
      current.pop_back();
    }
    if (j < b.size()) {
      current.push_back(b[j]);
      shuffle_rec(a, i, b, j + 1, current, out);
      current.pop_back();
    }
  }

  std::size_t repeats_;
  std::size_t limit_;
};

Kind kind_from_string(const std::string& s) {
  if (s == "activity") return Kind::activity;
  if (s == "sequence") return Kind::sequence;
  if (s == "exclusive" || s == "xor") return Kind::exclusive;
  if (s == "parallel" || s == "and") return Kind::parallel;
  if (s == "loop") return Kind::loop;
  if (s == "optional") return Kind::optional;
  throw ParseError("unknown process tree node kind '" + s + "'");
}

}  // namespace

std::set<std::string> alphabet(const ProcessTree& tree) {
  std::set<std::string> out;
  collect_alphabet(tree, out);
  return out;
}

Behavior sample_trace(const ProcessTree& tree, Rng& rng) {
  Behavior out;
  sample_into(tree, rng, out);
  return out;
}

std::set<Behavior> enumerate_variants(const ProcessTree& tree,
                                      std::size_t max_loop_repeats,
                                      std::size_t max_variants) {
  return Enumerator(max_loop_repeats, max_variants).run(tree);
}

nlohmann::json to_json(const ProcessTree& tree) {
  nlohmann::json j{{"kind", to_string(tree.kind)}};
  switch (tree.kind) {
    case Kind::activity:
      j["name"] = tree.name;
      break;
    case Kind::loop:
      j["body"] = to_json(tree.children[0]);
      if (tree.children.size() > 1) j["redo"] = to_json(tree.children[1]);
      break;
    case Kind::optional:
      j["child"] = to_json(tree.children[0]);
      break;
    default: {
      auto& children = j["children"] = nlohmann::json::array();
      for (const auto& c : tree.children) children.push_back(to_json(c));
    }
  }
  return j;
}

ProcessTree tree_from_json(const nlohmann::json& j) {
  ProcessTree tree;
  try {
    tree.kind = kind_from_string(j.at("kind").get<std::string>());
    switch (tree.kind) {
      case Kind::activity:
        tree.name = j.at("name").get<std::string>();
        break;
      case Kind::loop:
        tree.children.push_back(tree_from_json(j.at("body")));
        if (j.contains("redo") && !j["redo"].is_null())
          tree.children.push_back(tree_from_json(j["redo"]));
        break;
      case Kind::optional:
        tree.children.push_back(tree_from_json(j.at("child")));
        break;
      default:
        for (const auto& c : j.at("children"))
          tree.children.push_back(tree_from_json(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid process tree JSON: ") + e.what());
  }
  try {
    validate(tree);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid process tree: ") + e.what());
  }
  return tree;
}

ProcessTree read_tree_file(const std::string& path) {
  if (path == "loanlike") return loanlike_tree();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return tree_from_json(j);
}

std::string to_text(const ProcessTree& tree) {
  if (tree.is_leaf()) return tree.name;
  static constexpr const char* kNames[] = {"", "seq", "xor", "and", "loop",
                                           "opt"};
  std::string out = kNames[static_cast<int>(tree.kind)];
  out += '(';
  for (std::size_t k = 0; k < tree.children.size(); ++k) {
    if (k) out += ", ";
    out += to_text(tree.children[k]);
  }
  out += ')';
  return out;
}

ProcessTree loanlike_tree() {
  using T = ProcessTree;
  return T::sequence({
      T::activity("Loan application received"),
      T::activity("Check application form completeness"),
      T::parallel({T::activity("Appraise property"),
                   T::activity("Check credit history")}),
      T::activity("Assess loan risk"),
      T::activity("Assess eligibility"),
      T::exclusive({
          T::sequence({T::activity("Reject application"),
                       T::activity("Send rejection letter")}),
          T::sequence({T::activity("Prepare acceptance pack"),
                       T::activity("Check if home insurance quote is requested"),
                       T::activity("Send acceptance pack"),
                       T::activity("Send home insurance quote"),
                       T::activity("Verify repayment agreement"),
                       T::activity("Approve application"),
                       T::activity("Set up loan account"),
                       T::activity("Send approval letter")}),
      }),
      T::activity("Update customer record"),
      T::activity("Archive application"),
      T::activity("Close case"),
  });
}

}  // namespace crier
