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

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pgwb/action.hpp"
#include "pgwb/thread.hpp"

namespace pgwb {

// Reply of a service to a method: True, False, Meaningless (the method is
// turned into another action) or Blocked (rejected).
enum class Reply : std::uint8_t { T, F, M, B };

char reply_char(Reply r) noexcept;

template <class State>
struct Step {
  Reply reply;
  Action action;
  State next;
};

// A state-based service description: a state domain with a distinguished
// divergent state and a step function combining effect, yield and action.
//
// Requirements beyond the concept: step(m, divergent()) == {B, tau,
// divergent()}; states are hashable via std::hash and equality comparable;
// step is pure.
template <class D>
concept ServiceDescription = requires(const D& d, std::string_view m, const typename D::State& s) {
  typename D::State;
  { d.step(m, s) } -> std::same_as<Step<typename D::State>>;
  { d.divergent() } -> std::same_as<typename D::State>;
  { d.is_divergent(s) } -> std::convertible_to<bool>;
  { std::hash<typename D::State>{}(s) } -> std::convertible_to<std::size_t>;
  { s == s } -> std::convertible_to<bool>;
};

// A service: a description together with its current state.
template <ServiceDescription D>
struct ServiceInstance {
  D descr;
  typename D::State current;

  bool is_divergent() const { return descr.is_divergent(current); }
  Step<typename D::State> step(std::string_view m) const { return descr.step(m, current); }
};

template <ServiceDescription D>
ServiceInstance<D> make_instance(D descr, typename D::State initial) {
  return {std::move(descr), std::move(initial)};
}

// The divergent service of a family: every method is Blocked.
template <ServiceDescription D>
ServiceInstance<D> divergent_service(D descr) {
  auto s = descr.divergent();
  return {std::move(descr), std::move(s)};
}

// Validation ------------------------------------------------------------------

struct Violation {
  enum class Kind {
    // Some state yields M for a method for which another yields T or F.
    MeaninglessExclusivity,
    // A Blocked reply does not lead to the divergent state, or a method is
    // not Blocked in the divergent state.
    BlockedAbsorption,
    // reply != M but action != tau, or reply == M and action == tau.
    ReplyActionCoupling,
  };
  Kind kind;
  std::string method;
  std::size_t state_index;  // index into the state sample
  std::string detail;
};

std::string violation_kind_name(Violation::Kind k);

// Checks the service conditions over `states` x `methods`, reporting every
// violation. The divergent state is always checked in addition to the sample.
template <ServiceDescription D>
std::vector<Violation> validate_description(const D& d,
                                            std::span<const typename D::State> states,
                                            std::span<const std::string> methods) {
  std::vector<Violation> out;
  const auto div = d.divergent();
  for (const auto& m : methods) {
    bool any_m = false;
    bool any_tf = false;
    std::size_t tf_index = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto st = d.step(m, states[i]);
      if (st.reply == Reply::M) any_m = true;
      if (st.reply == Reply::T || st.reply == Reply::F) {
        if (!any_tf) tf_index = i;
        any_tf = true;
      }
      if ((st.reply != Reply::M) != st.action.is_tau())
        out.push_back({Violation::Kind::ReplyActionCoupling, m, i,
                       std::string("reply ") + reply_char(st.reply) + " with action " +
                           st.action.str()});
      // Absorption of the divergent state is checked once per method below.
      if (st.reply == Reply::B && !d.is_divergent(st.next))
        out.push_back({Violation::Kind::BlockedAbsorption, m, i,
                       "blocked reply does not lead to the divergent state"});
    }
    if (any_m && any_tf)
      out.push_back({Violation::Kind::MeaninglessExclusivity, m, tf_index,
                     "method yields M in some state and T/F in another"});
    const auto on_div = d.step(m, div);
    if (on_div.reply != Reply::B || !on_div.action.is_tau() || !d.is_divergent(on_div.next))
      out.push_back({Violation::Kind::BlockedAbsorption, m, states.size(),
                     "divergent state is not absorbing with Blocked replies"});
  }
  return out;
}

// Use --------------------------------------------------------------------------

// The product automaton explored by use_compose: `nodes[i]` is the node for
// the pair `pairs[i]` = (thread state, index into `service_states`). Index 0
// is the root pair.
template <class State>
struct UseExploration {
  std::vector<ThreadNode> nodes;
  std::vector<std::pair<StateId, std::uint32_t>> pairs;
  std::vector<State> service_states;

  Thread thread() const { return Thread::from_nodes(nodes, 0); }
};

template <ServiceDescription D>
UseExploration<typename D::State> explore_use(const Thread& t, std::string_view focus,
                                              const ServiceInstance<D>& svc) {
  using State = typename D::State;
  UseExploration<State> ex;
  std::unordered_map<State, std::uint32_t> state_ids;
  std::unordered_map<std::uint64_t, StateId> pair_ids;
  std::deque<StateId> work;

  auto intern = [&](const State& s) {
    auto [it, fresh] = state_ids.emplace(s, static_cast<std::uint32_t>(ex.service_states.size()));
    if (fresh) ex.service_states.push_back(s);
    return it->second;
  };
  auto pair_of = [&](StateId ts, std::uint32_t sid) {
    const std::uint64_t key = (static_cast<std::uint64_t>(ts) << 32) | sid;
    auto [it, fresh] = pair_ids.emplace(key, static_cast<StateId>(ex.pairs.size()));
    if (fresh) {
      ex.pairs.emplace_back(ts, sid);
      ex.nodes.push_back(ThreadNode::deadlock());
      work.push_back(it->second);
    }
    return it->second;
  };

  pair_of(t.root(), intern(svc.current));
  while (!work.empty()) {
    const StateId id = work.front();
    work.pop_front();
    const auto [ts, sid] = ex.pairs[id];
    const ThreadNode& n = t.node(ts);
    ThreadNode out = ThreadNode::deadlock();
    if (n.kind == NodeKind::Stop) {
      out = ThreadNode::stop();
    } else if (n.kind == NodeKind::Post && n.action.is_tau()) {
      StateId next = pair_of(n.on_true, sid);
      out = ThreadNode::post(Action::tau(), next, next);
    } else if (n.kind == NodeKind::Post) {
      // A meaningless reply may turn the action into another one on the same
      // focus, which is processed again against the stepped service.
      Action action = n.action;
      std::uint32_t cur = sid;
      std::vector<std::pair<Action, std::uint32_t>> rewrites;
      while (true) {
        if (action.focus() != focus) {
          StateId tt = pair_of(n.on_true, cur);
          StateId ff = pair_of(n.on_false, cur);
          out = ThreadNode::post(action, tt, ff);
          break;
        }
        const State current = ex.service_states[cur];
        auto st = svc.descr.step(action.method(), current);
        const std::uint32_t next = intern(st.next);
        if (st.reply == Reply::T || st.reply == Reply::F) {
          StateId c = pair_of(st.reply == Reply::T ? n.on_true : n.on_false, next);
          out = ThreadNode::post(Action::tau(), c, c);
          break;
        }
        if (st.reply == Reply::B) break;  // Deadlock
        if (st.action.is_tau()) {
          // Not a service in the strict sense; tau keeps the branch structure.
          StateId c = pair_of(n.on_true, next);
          out = ThreadNode::post(Action::tau(), c, c);
          break;
        }
        std::pair<Action, std::uint32_t> key{st.action, next};
        if (std::find(rewrites.begin(), rewrites.end(), key) != rewrites.end())
          break;  // endless rewriting: Deadlock
        rewrites.push_back(std::move(key));
        action = st.action;
        cur = next;
      }
    }
    ex.nodes[id] = std::move(out);
  }
  return ex;
}

// The thread t /f H: every f-action of t is processed by the service.
template <ServiceDescription D>
Thread use_compose(const Thread& t, std::string_view focus, const ServiceInstance<D>& svc) {
  return explore_use(t, focus, svc).thread();
}

// Apply ------------------------------------------------------------------------

// The service t .f H: the service after processing every action of t. Any
// deviation from a terminating run over focus f yields the divergent service,
// including runs that revisit a (thread state, service state) pair.
template <ServiceDescription D>
ServiceInstance<D> apply_compose(const Thread& t, std::string_view focus,
                                 const ServiceInstance<D>& svc) {
  using State = typename D::State;
  struct PairHash {
    std::size_t operator()(const std::pair<StateId, State>& p) const {
      return std::hash<State>{}(p.second) * 31 + p.first;
    }
  };
  auto diverge = [&] { return divergent_service(svc.descr); };

  std::unordered_set<std::pair<StateId, State>, PairHash> visited;
  StateId ts = t.root();
  State current = svc.current;
  while (true) {
    if (!visited.emplace(ts, current).second) return diverge();
    const ThreadNode& n = t.node(ts);
    if (n.kind == NodeKind::Stop) return {svc.descr, std::move(current)};
    if (n.kind == NodeKind::Deadlock) return diverge();
    if (n.action.is_tau()) {
      ts = n.on_true;
      continue;
    }
    Action action = n.action;
    std::vector<std::pair<Action, State>> rewrites;
    bool resolved = false;
    while (!resolved) {
      if (action.focus() != focus) return diverge();
      auto st = svc.descr.step(action.method(), current);
      switch (st.reply) {
        case Reply::T:
        case Reply::F:
          ts = st.reply == Reply::T ? n.on_true : n.on_false;
          current = std::move(st.next);
          resolved = true;
          break;
        case Reply::B: return diverge();
        case Reply::M:
          current = std::move(st.next);
          if (st.action.is_tau()) {
            ts = n.on_true;
            resolved = true;
            break;
          }
          for (const auto& [a, s] : rewrites)
            if (a == st.action && s == current) return diverge();
          rewrites.emplace_back(st.action, current);
          action = std::move(st.action);
          break;
      }
    }
  }
}

}  // namespace pgwb
