/*
 * Copyright 2026 The pgwb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgwb/action.hpp"

namespace pgwb {

using StateId = std::uint32_t;

enum class NodeKind : std::uint8_t { Stop, Deadlock, Post };

// Node descriptor of one thread state. For Post nodes, `on_true` and
// `on_false` are the continuations after a positive and a negative reply.
struct ThreadNode {
  NodeKind kind = NodeKind::Deadlock;
  Action action;
  StateId on_true = 0;
  StateId on_false = 0;

  static ThreadNode stop() { return {NodeKind::Stop, {}, 0, 0}; }
  static ThreadNode deadlock() { return {NodeKind::Deadlock, {}, 0, 0}; }
  static ThreadNode post(Action a, StateId t, StateId f) {
    return {NodeKind::Post, std::move(a), t, f};
  }

  friend bool operator==(const ThreadNode&, const ThreadNode&) = default;
};

class FiniteThreadTree;

// A finite-state thread: a rooted automaton of Stop/Deadlock leaves and
// postconditional nodes.
//
// Construction canonicalizes: states unreachable from the root are dropped,
// the remaining states are renumbered breadth-first from the root (root = 0,
// then-branch before else-branch), and the else-branch of every tau node is
// redirected to its then-branch, since a tau step always replies true.
class Thread {
 public:
  // The Deadlock thread.
  Thread();

  // Throws std::invalid_argument when a node references a state outside
  // `nodes` or `root` is out of range.
  static Thread from_nodes(std::vector<ThreadNode> nodes, StateId root);
  static Thread from_tree(const FiniteThreadTree& tree);

  static Thread stop();
  static Thread deadlock();
  static Thread post(const Action& a, const Thread& on_true, const Thread& on_false);
  // a o t, i.e. post(a, t, t).
  static Thread prefix(const Action& a, const Thread& t) { return post(a, t, t); }

  StateId root() const noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const ThreadNode& node(StateId s) const { return nodes_.at(s); }
  const std::vector<ThreadNode>& nodes() const noexcept { return nodes_; }

  // One line per state: `<id>: S | D | f.m ? <t> : <e> | tau ? <t> : <e>`.
  std::string dump() const;

  // Structural identity of the canonical automata (not bisimilarity).
  friend bool operator==(const Thread&, const Thread&) = default;

 private:
  std::vector<ThreadNode> nodes_;
};

// Right-hand side of a recursion equation; children are variable names.
struct RecRhs {
  NodeKind kind = NodeKind::Deadlock;
  Action action;
  std::string on_true;
  std::string on_false;

  static RecRhs stop() { return {NodeKind::Stop, {}, {}, {}}; }
  static RecRhs deadlock() { return {NodeKind::Deadlock, {}, {}, {}}; }
  static RecRhs post(Action a, std::string t, std::string f) {
    return {NodeKind::Post, std::move(a), std::move(t), std::move(f)};
  }
};

// A guarded recursive specification. Every right-hand side is a leaf or a
// Post node over variables, so guardedness holds structurally.
struct RecSpec {
  std::map<std::string, RecRhs> equations;
};

// The unique solution of `spec` for `variable`. Throws std::invalid_argument
// ("unbound recursion variable") when `variable` or a variable referenced by
// a reachable right-hand side has no equation.
Thread solve_recursion(const RecSpec& spec, const std::string& variable);

// A finite thread, the result of projection. Logically a tree; subtrees are
// immutable and shared physically, which keeps deep projections of small
// automata linear in size.
class FiniteThreadTree {
 public:
  struct Node {
    NodeKind kind;
    Action action;
    std::shared_ptr<const Node> on_true;
    std::shared_ptr<const Node> on_false;
  };

  static FiniteThreadTree stop();
  static FiniteThreadTree deadlock();
  static FiniteThreadTree post(Action a, const FiniteThreadTree& on_true,
                               const FiniteThreadTree& on_false);

  NodeKind kind() const noexcept { return node_->kind; }
  const Action& action() const noexcept { return node_->action; }
  FiniteThreadTree on_true() const;
  FiniteThreadTree on_false() const;
  const Node* raw() const noexcept { return node_.get(); }

  // Length of the longest action path plus one (0 never occurs).
  std::size_t height() const;

  // Term notation, e.g. `f.m(S, D)`. Exponential in the height for shared
  // subtrees; intended for small trees and diagnostics.
  std::string str() const;

  // Tree equality.
  friend bool operator==(const FiniteThreadTree& a, const FiniteThreadTree& b);

 private:
  explicit FiniteThreadTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Depth-n approximation: depth 0 is Deadlock, leaves are preserved at
// positive depth and Post nodes recurse with depth n - 1.
FiniteThreadTree project(std::size_t depth, const Thread& t);

// Abstraction from tau: tau nodes are contracted into their then-branch and
// states that can only perform tau forever become Deadlock.
Thread abstract(const Thread& t);

// One step of a path through a thread: the action performed and the reply
// followed (true = then-branch).
struct PathStep {
  Action action;
  bool reply = true;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// What a thread shows at the end of a path: a leaf, or the action of a Post
// node.
struct Observation {
  NodeKind kind = NodeKind::Deadlock;
  Action action;

  std::string str() const;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// A path along which two threads agree, followed by differing observations.
struct Counterexample {
  std::vector<PathStep> path;
  Observation left;
  Observation right;

  // Projection depth at which the difference first shows.
  std::size_t depth() const noexcept { return path.size() + 1; }
  std::string str() const;
};

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const noexcept { return equivalent; }
};

// Decides equality of the infinite unfoldings of two finite-state threads by
// breadth-first exploration of state pairs. On failure the counterexample has
// minimal length.
EquivalenceResult equivalent(const Thread& a, const Thread& b);

// Follows `path` from the root of `t`. Returns the observation at its end, or
// nullopt if `t` cannot perform the path.
std::optional<Observation> replay(const Thread& t, const std::vector<PathStep>& path);

}  // namespace pgwb
