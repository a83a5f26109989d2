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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pgwb/services.hpp"
#include "pgwb/thread.hpp"

namespace pgwb::testing {

struct CounterState {
  bool divergent = false;
  int n = 0;
  friend bool operator==(const CounterState&, const CounterState&) = default;
};

}  // namespace pgwb::testing

template <>
struct std::hash<pgwb::testing::CounterState> {
  std::size_t operator()(const pgwb::testing::CounterState& s) const noexcept { return s.divergent ? 99 : s.n; }
};

namespace pgwb::testing {

// A counter modulo 4 on focus c. `redir` rewrites itself into c.inc, `ext`
// into the foreign action e.m, `spin` into itself.
struct Counter {
  using State = CounterState;

  Step<State> step(std::string_view m, const State& s) const {
    if (s.divergent) return {Reply::B, Action::tau(), divergent()};
    if (m == "inc") return {Reply::T, Action::tau(), {false, (s.n + 1) % 4}};
    if (m == "dec") return s.n > 0 ? Step<State>{Reply::T, Action::tau(), {false, s.n - 1}} : Step<State>{Reply::F, Action::tau(), s};
    if (m == "zero") return {s.n == 0 ? Reply::T : Reply::F, Action::tau(), s};
    if (m == "redir") return {Reply::M, Action::basic("c", "inc"), s};
    if (m == "ext") return {Reply::M, Action::basic("e", "m"), s};
    if (m == "spin") return {Reply::M, Action::basic("c", "spin"), s};
    return {Reply::B, Action::tau(), divergent()};
  }
  State divergent() const { return {true, 0}; }
  bool is_divergent(const State& s) const { return s.divergent; }
};

static_assert(ServiceDescription<Counter>);

inline ServiceInstance<Counter> counter(int n = 0) { return make_instance(Counter{}, CounterState{false, n}); }

// Directed cases for use and apply, one entry per case: name and outcome.
std::vector<std::pair<std::string, bool>> composition_cases();

}  // namespace pgwb::testing
