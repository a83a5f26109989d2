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

#include "oracles.hpp"

#include <map>
#include <set>

namespace pgwb::testing {

Thread direct_pgld_thread(const PgldProgram& p) {
  const std::size_t k = p.size();
  const StateId stop = static_cast<StateId>(k), dead = static_cast<StateId>(k + 1);
  auto resolve = [&](std::size_t j) -> StateId {
    std::set<std::size_t> seen;
    while (true) {
      if (j > k) return stop;
      const LdInstr& u = p[j - 1];
      if (u.kind != LdKind::AbsJump) return static_cast<StateId>(j - 1);
      if (u.target == 0 || u.target > k) return stop;
      if (!seen.insert(j).second) return dead;
      j = u.target;
    }
  };
  std::vector<ThreadNode> nodes(k + 2, ThreadNode::deadlock());
  nodes[stop] = ThreadNode::stop();
  for (std::size_t j = 1; j <= k; ++j) {
    const LdInstr& u = p[j - 1];
    switch (u.kind) {
      case LdKind::Plain: nodes[j - 1] = ThreadNode::post(u.action, resolve(j + 1), resolve(j + 1)); break;
      case LdKind::PosTest: nodes[j - 1] = ThreadNode::post(u.action, resolve(j + 1), resolve(j + 2)); break;
      case LdKind::NegTest: nodes[j - 1] = ThreadNode::post(u.action, resolve(j + 2), resolve(j + 1)); break;
      default: break;
    }
  }
  return Thread::from_nodes(std::move(nodes), resolve(1));
}

Thread direct_pgldij_thread(const PgldijProgram& p, std::uint32_t maxr) {
  const std::size_t k = p.size();
  using Regs = std::vector<std::uint32_t>;
  using Key = std::pair<std::size_t, Regs>;
  std::vector<ThreadNode> nodes{ThreadNode::stop(), ThreadNode::deadlock()};
  std::map<Key, StateId> ids;
  std::vector<Key> pending;

  auto resolve = [&](std::size_t j, Regs regs) -> StateId {
    std::set<Key> seen;
    while (true) {
      if (j > k) return 0;
      const LdInstr& u = p[j - 1];
      if (u.has_action()) break;
      if (!seen.insert({j, regs}).second) return 1;
      switch (u.kind) {
        case LdKind::AbsJump:
          if (u.target == 0 || u.target > k) return 0;
          j = u.target;
          break;
        case LdKind::RegSet:
          regs[u.target - 1] = u.value;
          ++j;
          break;
        case LdKind::IndJump: {
          const std::uint32_t l = regs[u.target - 1];
          if (l == 0 || l > k) return 0;
          j = l;
          break;
        }
        default: break;
      }
    }
    auto [it, fresh] = ids.emplace(Key{j, regs}, static_cast<StateId>(nodes.size()));
    if (fresh) {
      nodes.push_back(ThreadNode::deadlock());
      pending.push_back(it->first);
    }
    return it->second;
  };

  const StateId root = resolve(1, Regs(maxr, 0));
  while (!pending.empty()) {
    const Key key = pending.back();
    pending.pop_back();
    const auto [j, regs] = key;
    const LdInstr& u = p[j - 1];
    const StateId next1 = resolve(j + 1, regs);
    const StateId next2 = resolve(j + 2, regs);
    ThreadNode n;
    if (u.kind == LdKind::Plain) n = ThreadNode::post(u.action, next1, next1);
    if (u.kind == LdKind::PosTest) n = ThreadNode::post(u.action, next1, next2);
    if (u.kind == LdKind::NegTest) n = ThreadNode::post(u.action, next2, next1);
    nodes[ids.at(key)] = n;
  }
  return Thread::from_nodes(std::move(nodes), root);
}

FiniteThreadTree literal_extraction(const std::vector<PrimInstr>& instrs, std::size_t depth) {
  std::map<std::pair<std::size_t, std::size_t>, FiniteThreadTree> memo;
  const std::size_t n = instrs.size();
  auto go = [&](auto& self, std::size_t pos, std::size_t d) -> FiniteThreadTree {
    if (d == 0) return FiniteThreadTree::deadlock();
    while (pos < n && instrs[pos].is_jump()) {
      if (instrs[pos].offset() == 0) return FiniteThreadTree::deadlock();
      pos += instrs[pos].offset();
    }
    if (pos >= n) return FiniteThreadTree::deadlock();
    if (auto it = memo.find({pos, d}); it != memo.end()) return it->second;
    const PrimInstr& u = instrs[pos];
    FiniteThreadTree out = FiniteThreadTree::stop();
    switch (u.kind()) {
      case InstrKind::Halt: break;
      case InstrKind::Plain: {
        auto next = self(self, pos + 1, d - 1);
        out = FiniteThreadTree::post(u.action(), next, next);
        break;
      }
      case InstrKind::PosTest:
        out = FiniteThreadTree::post(u.action(), self(self, pos + 1, d - 1), self(self, pos + 2, d - 1));
        break;
      case InstrKind::NegTest:
        out = FiniteThreadTree::post(u.action(), self(self, pos + 2, d - 1), self(self, pos + 1, d - 1));
        break;
      case InstrKind::Jump: break;
    }
    memo.emplace(std::pair{pos, d}, out);
    return out;
  };
  return go(go, 0, depth);
}

std::vector<PrimInstr> unroll(const InstrSeq& x, std::size_t copies) {
  std::vector<PrimInstr> out = x.prefix();
  for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), x.loop().begin(), x.loop().end());
  return out;
}

std::size_t copies_for_depth(const InstrSeq& x, std::size_t depth) {
  if (!x.has_loop()) return 0;
  std::uint64_t longest = 0;
  for (const auto& u : x.prefix())
    if (u.is_jump()) longest = std::max<std::uint64_t>(longest, u.offset());
  for (const auto& u : x.loop())
    if (u.is_jump()) longest = std::max<std::uint64_t>(longest, u.offset());
  // Between two actions a run visits each loop offset at most once (a repeat
  // is a silent cycle), so it advances at most |loop| * (longest + 1)
  // positions, i.e. longest + 2 copies.
  return (depth + 2) * (longest + 2) + 2;
}

PrimInstr random_instr(std::mt19937_64& rng, std::uint32_t max_jump) {
  static const Action actions[] = {Action::basic("a", "x"), Action::basic("a", "y"), Action::basic("b", "x")};
  const Action& a = actions[rng() % 3];
  switch (rng() % 6) {
    case 0: return PrimInstr::plain(a);
    case 1: return PrimInstr::pos_test(a);
    case 2: return PrimInstr::neg_test(a);
    case 3: return PrimInstr::halt();
    default: return PrimInstr::jump(static_cast<std::uint32_t>(rng() % (max_jump + 1)));
  }
}

InstrSeq random_seq(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_loop, bool force_loop) {
  const std::size_t np = rng() % (max_prefix + 1);
  std::size_t nl = (force_loop || rng() % 2) ? 1 + rng() % max_loop : 0;
  if (np == 0 && nl == 0) nl = 1;
  const auto span = static_cast<std::uint32_t>(np + nl + 2);
  std::vector<PrimInstr> prefix, loop;
  for (std::size_t i = 0; i < np; ++i) prefix.push_back(random_instr(rng, span));
  for (std::size_t i = 0; i < nl; ++i) loop.push_back(random_instr(rng, span));
  return InstrSeq(std::move(prefix), std::move(loop));
}

InstrSeq random_jump_seq(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_loop) {
  const std::size_t np = rng() % (max_prefix + 1);
  const std::size_t nl = 1 + rng() % max_loop;
  const auto span = static_cast<std::uint32_t>(2 * (np + nl));
  auto pick = [&] { return rng() % 4 == 0 ? random_instr(rng, span) : PrimInstr::jump(static_cast<std::uint32_t>(rng() % (span + 1))); };
  std::vector<PrimInstr> prefix, loop;
  for (std::size_t i = 0; i < np; ++i) prefix.push_back(pick());
  for (std::size_t i = 0; i < nl; ++i) loop.push_back(pick());
  return InstrSeq(std::move(prefix), std::move(loop));
}

PgldijProgram random_deep_program(std::mt19937_64& rng, std::size_t max_k, std::uint32_t registers) {
  const std::size_t k = 4 + rng() % (max_k - 3);
  std::vector<LdInstr> out;
  for (std::size_t j = 0; j < k; ++j) {
    const auto r = rng() % 20;
    if (registers > 0 && r >= 17) {
      const auto reg = static_cast<std::uint32_t>(1 + rng() % registers);
      out.push_back(r == 17 ? LdInstr::ind_jump(reg) : LdInstr::reg_set(reg, static_cast<std::uint32_t>(1 + rng() % k)));
      continue;
    }
    if (r < 12) {
      Action a = Action::basic("f" + std::to_string(rng() % 3), "m" + std::to_string(rng() % 3));
      const auto t = rng() % 3;
      out.push_back(t == 0 ? LdInstr::plain(std::move(a)) : t == 1 ? LdInstr::pos_test(std::move(a)) : LdInstr::neg_test(std::move(a)));
    } else if (r < 18) {
      const std::size_t here = j + 1;
      const bool forward = here < k && rng() % 3 != 0;
      out.push_back(LdInstr::jump(static_cast<std::uint32_t>(forward ? here + 1 + rng() % (k - here) : 1 + rng() % k)));
    } else {
      out.push_back(LdInstr::jump(rng() % 2 ? 0 : static_cast<std::uint32_t>(k + 1 + rng() % k)));
    }
  }
  return PgldijProgram(std::move(out));
}

namespace {

ThreadNode random_node(std::mt19937_64& rng, std::size_t states, bool with_tau) {
  static const Action actions[] = {Action::basic("a", "x"), Action::basic("a", "y"), Action::basic("b", "x")};
  const auto r = rng() % 10;
  if (r == 0) return ThreadNode::stop();
  if (r == 1) return ThreadNode::deadlock();
  const Action a = with_tau && r == 2 ? Action::tau() : actions[rng() % 3];
  return ThreadNode::post(a, static_cast<StateId>(rng() % states), static_cast<StateId>(rng() % states));
}

}  // namespace

Thread random_thread(std::mt19937_64& rng, std::size_t states, bool with_tau) {
  std::vector<ThreadNode> nodes;
  for (std::size_t i = 0; i < states; ++i) nodes.push_back(random_node(rng, states, with_tau));
  return Thread::from_nodes(std::move(nodes), 0);
}

Thread duplicate_states(std::mt19937_64& rng, const Thread& t) {
  const std::size_t n = t.size();
  std::vector<ThreadNode> nodes;
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (const auto& node : t.nodes()) {
      ThreadNode c = node;
      if (c.kind == NodeKind::Post) {
        c.on_true += static_cast<StateId>((rng() % 2) * n);
        c.on_false += static_cast<StateId>((rng() % 2) * n);
      }
      nodes.push_back(c);
    }
  return Thread::from_nodes(std::move(nodes), static_cast<StateId>((rng() % 2) * n));
}

Thread perturb(std::mt19937_64& rng, const Thread& t) {
  std::vector<ThreadNode> nodes = t.nodes();
  nodes[rng() % nodes.size()] = random_node(rng, nodes.size(), false);
  return Thread::from_nodes(std::move(nodes), 0);
}

}  // namespace pgwb::testing
