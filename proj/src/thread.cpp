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

#include "pgwb/thread.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pgwb {

namespace {

constexpr StateId kUnvisited = static_cast<StateId>(-1);

std::uint64_t pair_key(StateId a, StateId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Thread::Thread() : nodes_{ThreadNode::deadlock()} {}

Thread Thread::from_nodes(std::vector<ThreadNode> nodes, StateId root) {
  if (root >= nodes.size()) throw std::invalid_argument("thread root out of range");
  for (auto& n : nodes) {
    if (n.kind != NodeKind::Post) continue;
    if (n.on_true >= nodes.size() || n.on_false >= nodes.size())
      throw std::invalid_argument("thread node references an unknown state");
    if (n.action.is_tau()) n.on_false = n.on_true;
  }

  std::vector<StateId> renumber(nodes.size(), kUnvisited);
  std::vector<StateId> order;
  std::deque<StateId> queue{root};
  renumber[root] = 0;
  order.push_back(root);
  auto visit = [&](StateId s) {
    if (renumber[s] != kUnvisited) return;
    renumber[s] = static_cast<StateId>(order.size());
    order.push_back(s);
    queue.push_back(s);
  };
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const ThreadNode& n = nodes[s];
    if (n.kind != NodeKind::Post) continue;
    visit(n.on_true);
    visit(n.on_false);
  }

  Thread t;
  t.nodes_.clear();
  t.nodes_.reserve(order.size());
  for (StateId old : order) {
    ThreadNode n = std::move(nodes[old]);
    if (n.kind == NodeKind::Post) {
      n.on_true = renumber[n.on_true];
      n.on_false = renumber[n.on_false];
    } else {
      n.on_true = n.on_false = 0;
      n.action = Action::tau();
    }
    t.nodes_.push_back(std::move(n));
  }
  return t;
}

Thread Thread::from_tree(const FiniteThreadTree& tree) {
  std::vector<ThreadNode> nodes;
  std::unordered_map<const FiniteThreadTree::Node*, StateId> ids;
  std::vector<const FiniteThreadTree::Node*> pending{tree.raw()};
  ids.emplace(tree.raw(), 0);
  nodes.emplace_back();
  while (!pending.empty()) {
    const auto* n = pending.back();
    pending.pop_back();
    auto id_of = [&](const FiniteThreadTree::Node* c) {
      auto [it, fresh] = ids.emplace(c, static_cast<StateId>(nodes.size()));
      if (fresh) {
        nodes.emplace_back();
        pending.push_back(c);
      }
      return it->second;
    };
    StateId self = ids.at(n);
    if (n->kind == NodeKind::Post) {
      StateId t = id_of(n->on_true.get());
      StateId f = id_of(n->on_false.get());
      nodes[self] = ThreadNode::post(n->action, t, f);
    } else {
      nodes[self] = n->kind == NodeKind::Stop ? ThreadNode::stop() : ThreadNode::deadlock();
    }
  }
  return from_nodes(std::move(nodes), 0);
}

Thread Thread::stop() { return from_nodes({ThreadNode::stop()}, 0); }

Thread Thread::deadlock() { return Thread(); }

Thread Thread::post(const Action& a, const Thread& on_true, const Thread& on_false) {
  std::vector<ThreadNode> nodes;
  nodes.reserve(1 + on_true.size() + on_false.size());
  auto base_t = static_cast<StateId>(1);
  auto base_f = static_cast<StateId>(1 + on_true.size());
  nodes.push_back(ThreadNode::post(a, base_t, base_f));
  auto append = [&](const Thread& t, StateId base) {
    for (ThreadNode n : t.nodes_) {
      if (n.kind == NodeKind::Post) {
        n.on_true += base;
        n.on_false += base;
      }
      nodes.push_back(std::move(n));
    }
  };
  append(on_true, base_t);
  append(on_false, base_f);
  return from_nodes(std::move(nodes), 0);
}

std::string Thread::dump() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ThreadNode& n = nodes_[i];
    out << i << ": ";
    switch (n.kind) {
      case NodeKind::Stop: out << "S"; break;
      case NodeKind::Deadlock: out << "D"; break;
      case NodeKind::Post:
        out << n.action.str() << " ? " << n.on_true << " : " << n.on_false;
        break;
    }
    out << '\n';
  }
  return out.str();
}

Thread solve_recursion(const RecSpec& spec, const std::string& variable) {
  if (!spec.equations.contains(variable))
    throw std::invalid_argument("unbound recursion variable: " + variable);
  std::map<std::string, StateId> index;
  for (const auto& [name, rhs] : spec.equations) index.emplace(name, index.size());

  std::vector<ThreadNode> nodes;
  nodes.reserve(index.size());
  for (const auto& [name, rhs] : spec.equations) {
    switch (rhs.kind) {
      case NodeKind::Stop: nodes.push_back(ThreadNode::stop()); break;
      case NodeKind::Deadlock: nodes.push_back(ThreadNode::deadlock()); break;
      case NodeKind::Post: {
        auto lookup = [&](const std::string& v) {
          auto it = index.find(v);
          if (it == index.end())
            throw std::invalid_argument("unbound recursion variable: " + v +
                                        " (in equation for " + name + ")");
          return it->second;
        };
        nodes.push_back(ThreadNode::post(rhs.action, lookup(rhs.on_true), lookup(rhs.on_false)));
        break;
      }
    }
  }
  return Thread::from_nodes(std::move(nodes), index.at(variable));
}

// FiniteThreadTree -----------------------------------------------------------

FiniteThreadTree FiniteThreadTree::stop() {
  static const auto leaf = std::make_shared<const Node>(Node{NodeKind::Stop, {}, nullptr, nullptr});
  return FiniteThreadTree(leaf);
}

FiniteThreadTree FiniteThreadTree::deadlock() {
  static const auto leaf =
      std::make_shared<const Node>(Node{NodeKind::Deadlock, {}, nullptr, nullptr});
  return FiniteThreadTree(leaf);
}

FiniteThreadTree FiniteThreadTree::post(Action a, const FiniteThreadTree& on_true,
                                        const FiniteThreadTree& on_false) {
  return FiniteThreadTree(std::make_shared<const Node>(
      Node{NodeKind::Post, std::move(a), on_true.node_, on_false.node_}));
}

FiniteThreadTree FiniteThreadTree::on_true() const {
  if (kind() != NodeKind::Post) throw std::logic_error("leaf has no children");
  return FiniteThreadTree(node_->on_true);
}

FiniteThreadTree FiniteThreadTree::on_false() const {
  if (kind() != NodeKind::Post) throw std::logic_error("leaf has no children");
  return FiniteThreadTree(node_->on_false);
}

std::size_t FiniteThreadTree::height() const {
  std::unordered_map<const Node*, std::size_t> memo;
  auto go = [&](auto&& self, const Node* n) -> std::size_t {
    if (n->kind != NodeKind::Post) return 1;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::size_t h = 1 + std::max(self(self, n->on_true.get()), self(self, n->on_false.get()));
    memo.emplace(n, h);
    return h;
  };
  return go(go, node_.get());
}

std::string FiniteThreadTree::str() const {
  auto go = [](auto&& self, const Node* n) -> std::string {
    switch (n->kind) {
      case NodeKind::Stop: return "S";
      case NodeKind::Deadlock: return "D";
      case NodeKind::Post: break;
    }
    return n->action.str() + "(" + self(self, n->on_true.get()) + ", " +
           self(self, n->on_false.get()) + ")";
  };
  return go(go, node_.get());
}

bool operator==(const FiniteThreadTree& a, const FiniteThreadTree& b) {
  std::unordered_set<std::uint64_t> seen;
  std::unordered_map<const FiniteThreadTree::Node*, std::uint32_t> ids;
  auto id = [&](const FiniteThreadTree::Node* n) {
    return ids.emplace(n, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  std::vector<std::pair<const FiniteThreadTree::Node*, const FiniteThreadTree::Node*>> stack{
      {a.raw(), b.raw()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) continue;
    if (!seen.insert(pair_key(id(x), id(y))).second) continue;
    if (x->kind != y->kind) return false;
    if (x->kind != NodeKind::Post) continue;
    if (x->action != y->action) return false;
    stack.emplace_back(x->on_true.get(), y->on_true.get());
    stack.emplace_back(x->on_false.get(), y->on_false.get());
  }
  return true;
}

FiniteThreadTree project(std::size_t depth, const Thread& t) {
  // memo[d][s] = projection of state s to depth d.
  std::vector<std::vector<std::optional<FiniteThreadTree>>> memo(
      depth + 1, std::vector<std::optional<FiniteThreadTree>>(t.size()));
  for (std::size_t d = 0; d <= depth; ++d) {
    for (StateId s = 0; s < t.size(); ++s) {
      const ThreadNode& n = t.node(s);
      if (d == 0 || n.kind == NodeKind::Deadlock) {
        memo[d][s] = FiniteThreadTree::deadlock();
      } else if (n.kind == NodeKind::Stop) {
        memo[d][s] = FiniteThreadTree::stop();
      } else {
        memo[d][s] = FiniteThreadTree::post(n.action, *memo[d - 1][n.on_true],
                                            *memo[d - 1][n.on_false]);
      }
    }
  }
  return *memo[depth][t.root()];
}

Thread abstract(const Thread& t) {
  // resolved[s]: the first non-tau state on the tau chain from s, or
  // kDiverges when the chain runs into a tau cycle.
  constexpr StateId kDiverges = static_cast<StateId>(-2);
  constexpr StateId kOnStack = static_cast<StateId>(-3);
  std::vector<StateId> resolved(t.size(), kUnvisited);
  for (StateId start = 0; start < t.size(); ++start) {
    std::vector<StateId> chain;
    StateId s = start;
    StateId result;
    while (true) {
      if (resolved[s] == kOnStack) { result = kDiverges; break; }
      if (resolved[s] != kUnvisited) { result = resolved[s]; break; }
      const ThreadNode& n = t.node(s);
      if (n.kind != NodeKind::Post || !n.action.is_tau()) { result = s; break; }
      resolved[s] = kOnStack;
      chain.push_back(s);
      s = n.on_true;
    }
    for (StateId c : chain) resolved[c] = result;
    if (resolved[start] == kUnvisited) resolved[start] = result;
  }

  std::vector<ThreadNode> nodes(t.size() + 1);
  const auto deadlock = static_cast<StateId>(t.size());
  nodes[deadlock] = ThreadNode::deadlock();
  auto target = [&](StateId s) { return resolved[s] == kDiverges ? deadlock : resolved[s]; };
  for (StateId s = 0; s < t.size(); ++s) {
    const ThreadNode& n = t.node(s);
    if (n.kind == NodeKind::Post && !n.action.is_tau())
      nodes[s] = ThreadNode::post(n.action, target(n.on_true), target(n.on_false));
    else
      nodes[s] = n.kind == NodeKind::Stop ? ThreadNode::stop() : ThreadNode::deadlock();
  }
  return Thread::from_nodes(std::move(nodes), target(t.root()));
}

// Equivalence ------------------------------------------------------------------

std::string Observation::str() const {
  switch (kind) {
    case NodeKind::Stop: return "S";
    case NodeKind::Deadlock: return "D";
    case NodeKind::Post: break;
  }
  return action.str();
}

std::string Counterexample::str() const {
  std::string s;
  for (const auto& step : path) {
    s += step.action.str();
    s += step.reply ? "+ " : "- ";
  }
  if (path.empty()) s = "<root> ";
  return s + ": left=" + left.str() + " right=" + right.str();
}

namespace {

Observation observe(const ThreadNode& n) {
  return n.kind == NodeKind::Post ? Observation{n.kind, n.action} : Observation{n.kind, {}};
}

}  // namespace

EquivalenceResult equivalent(const Thread& a, const Thread& b) {
  struct Visit {
    StateId left, right;
    std::size_t parent;  // index into `visits`, or npos for the root pair
    bool reply;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<Visit> visits{{a.root(), b.root(), npos, true}};
  std::unordered_set<std::uint64_t> seen{pair_key(a.root(), b.root())};

  for (std::size_t i = 0; i < visits.size(); ++i) {
    const auto [l, r, parent, reply] = visits[i];
    const ThreadNode& x = a.node(l);
    const ThreadNode& y = b.node(r);
    Observation ox = observe(x), oy = observe(y);
    if (ox != oy) {
      Counterexample cex{{}, ox, oy};
      for (std::size_t j = i; visits[j].parent != npos; j = visits[j].parent) {
        const Visit& v = visits[j];
        cex.path.push_back({a.node(visits[v.parent].left).action, v.reply});
      }
      std::reverse(cex.path.begin(), cex.path.end());
      return {false, std::move(cex)};
    }
    if (x.kind != NodeKind::Post) continue;
    if (seen.insert(pair_key(x.on_true, y.on_true)).second)
      visits.push_back({x.on_true, y.on_true, i, true});
    if (seen.insert(pair_key(x.on_false, y.on_false)).second)
      visits.push_back({x.on_false, y.on_false, i, false});
  }
  return {true, std::nullopt};
}

std::optional<Observation> replay(const Thread& t, const std::vector<PathStep>& path) {
  StateId s = t.root();
  for (const auto& step : path) {
    const ThreadNode& n = t.node(s);
    if (n.kind != NodeKind::Post || n.action != step.action) return std::nullopt;
    s = step.reply ? n.on_true : n.on_false;
  }
  return observe(t.node(s));
}

}  // namespace pgwb
