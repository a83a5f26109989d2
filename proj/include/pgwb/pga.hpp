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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgwb/action.hpp"
#include "pgwb/thread.hpp"

namespace pgwb {

enum class InstrKind : std::uint8_t { Plain, PosTest, NegTest, Jump, Halt };

// A PGA primitive instruction: a, +a, -a, #l or !.
class PrimInstr {
 public:
  static PrimInstr plain(Action a);
  static PrimInstr pos_test(Action a);
  static PrimInstr neg_test(Action a);
  static PrimInstr jump(std::uint32_t offset);
  static PrimInstr halt();

  InstrKind kind() const noexcept { return kind_; }
  // Basic action of plain and test instructions.
  const Action& action() const noexcept { return action_; }
  // Offset of a forward jump.
  std::uint32_t offset() const noexcept { return offset_; }
  bool is_jump() const noexcept { return kind_ == InstrKind::Jump; }

  std::string str() const;

  friend bool operator==(const PrimInstr&, const PrimInstr&) = default;

 private:
  InstrKind kind_ = InstrKind::Halt;
  Action action_;
  std::uint32_t offset_ = 0;
};

// A closed PGA term in canonical form: `prefix` or `prefix ; (loop)*`.
class InstrSeq {
 public:
  // Throws std::invalid_argument if both parts are empty.
  explicit InstrSeq(std::vector<PrimInstr> prefix, std::vector<PrimInstr> loop = {});

  static InstrSeq single(PrimInstr u) { return InstrSeq({std::move(u)}); }

  const std::vector<PrimInstr>& prefix() const noexcept { return prefix_; }
  const std::vector<PrimInstr>& loop() const noexcept { return loop_; }
  bool has_loop() const noexcept { return !loop_.empty(); }
  std::size_t length() const noexcept { return prefix_.size() + loop_.size(); }

  // Instruction at canonical position p (prefix first, then loop body).
  const PrimInstr& at(std::size_t p) const;

  friend bool operator==(const InstrSeq&, const InstrSeq&) = default;

 private:
  std::vector<PrimInstr> prefix_;
  std::vector<PrimInstr> loop_;
};

// x ; y. A repetition absorbs everything after it.
InstrSeq concat(const InstrSeq& x, const InstrSeq& y);

// x*. A sequence that already repeats is returned unchanged.
InstrSeq repeat(const InstrSeq& x);

// Collapses forward-jump chains into single jumps: a jump landing on another
// jump is redirected to the final target of the chain, cyclic chains and
// chains ending in #0 become #0, and offsets that wrap around the repeated
// block are reduced to the shortest forward distance.
InstrSeq normalize_chains(const InstrSeq& x);

// Thread extraction: one state per non-jump position plus a shared Deadlock
// state. Jumps beyond the end of a finite sequence, #0, cyclic jump chains
// and missing test continuations yield Deadlock.
Thread extract_thread(const InstrSeq& x);

// Text form: `;`-separated instructions, `(...)*` repetition, `#n`, `!`,
// `+a`, `-a`, actions `focus.method`. A bare method is read with the
// default focus (md). Parenthesized terms may nest and are canonicalized.
InstrSeq parse_pga(std::string_view text, std::string_view default_focus = "md");

// Canonical form, no whitespace: `u1;...;un` or `u1;...;(v1;...;vm)*`.
std::string print_pga(const InstrSeq& x);

}  // namespace pgwb
