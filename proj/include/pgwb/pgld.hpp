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
#include <string>
#include <string_view>
#include <vector>

#include "pgwb/action.hpp"
#include "pgwb/pga.hpp"
#include "pgwb/rf.hpp"
#include "pgwb/thread.hpp"

namespace pgwb {

// Foci reserved for the services used by the translations: md for the
// molecular dynamics service, rf for the register file.
inline constexpr std::string_view kMdFocus = "md";
inline constexpr std::string_view kRfFocus = "rf";

enum class LdKind : std::uint8_t { Plain, PosTest, NegTest, AbsJump, RegSet, IndJump };

// An instruction of PGLD or PGLDij: a, +a, -a, ##l, set:i:n or i##i.
struct LdInstr {
  LdKind kind = LdKind::AbsJump;
  Action action;       // Plain, PosTest, NegTest
  std::uint32_t target = 0;  // AbsJump: l; RegSet, IndJump: register i
  std::uint32_t value = 0;   // RegSet: n

  static LdInstr plain(Action a) { return {LdKind::Plain, std::move(a), 0, 0}; }
  static LdInstr pos_test(Action a) { return {LdKind::PosTest, std::move(a), 0, 0}; }
  static LdInstr neg_test(Action a) { return {LdKind::NegTest, std::move(a), 0, 0}; }
  static LdInstr jump(std::uint32_t l) { return {LdKind::AbsJump, {}, l, 0}; }
  static LdInstr reg_set(std::uint32_t i, std::uint32_t n) { return {LdKind::RegSet, {}, i, n}; }
  static LdInstr ind_jump(std::uint32_t i) { return {LdKind::IndJump, {}, i, 0}; }

  bool has_action() const noexcept { return kind <= LdKind::NegTest; }
  std::string str() const;

  friend bool operator==(const LdInstr&, const LdInstr&) = default;
};

// A PGLD program u1;...;uk, k >= 1, without register instructions.
class PgldProgram {
 public:
  // Throws std::invalid_argument when empty or when a register instruction
  // occurs.
  explicit PgldProgram(std::vector<LdInstr> instrs);

  const std::vector<LdInstr>& instrs() const noexcept { return instrs_; }
  std::size_t size() const noexcept { return instrs_.size(); }
  const LdInstr& operator[](std::size_t j) const { return instrs_[j]; }

  friend bool operator==(const PgldProgram&, const PgldProgram&) = default;

 private:
  std::vector<LdInstr> instrs_;
};

// A PGLDij program, k >= 1.
class PgldijProgram {
 public:
  // Throws std::invalid_argument when empty.
  explicit PgldijProgram(std::vector<LdInstr> instrs);
  explicit PgldijProgram(const PgldProgram& p) : PgldijProgram(p.instrs()) {}

  const std::vector<LdInstr>& instrs() const noexcept { return instrs_; }
  std::size_t size() const noexcept { return instrs_.size(); }
  const LdInstr& operator[](std::size_t j) const { return instrs_[j]; }
  bool uses_registers() const;

  friend bool operator==(const PgldijProgram&, const PgldijProgram&) = default;

 private:
  std::vector<LdInstr> instrs_;
};

// Instructions separated by `;`, whitespace ignored. Basic actions are
// focus.method; the foci md and rf and names starting with `@` are rejected.
// Throws ParseError.
PgldProgram parse_pgld(std::string_view text);
PgldijProgram parse_pgldij(std::string_view text);
// True when the text contains register instructions, i.e. only parses as
// PGLDij. Throws ParseError on text that is neither.
bool is_pgldij_text(std::string_view text);

std::string print_pgld(const PgldProgram& p);
std::string print_pgldij(const PgldijProgram& p);

// Throws TranslationError when a basic action uses a reserved focus.
void check_reserved_foci(const std::vector<LdInstr>& instrs);

// (v1;...;vk;!;!)* where vj is uj with an absolute jump turned into a forward
// jump relative to position j; ##0 and jumps past the end become !.
InstrSeq pgld_to_pga(const PgldProgram& p);
Thread pgld_behavior(const PgldProgram& p);

// Start offset of the dispatch block of register i in the translation of a
// program of length k.
std::uint32_t dispatch_entry(std::size_t k, std::uint32_t i, std::uint32_t maxn);

// Register instructions become register file actions and dispatch jumps.
// Throws TranslationError on register indices outside [1, maxr], register
// values outside [1, maxn] or reserved foci.
PgldProgram pgldij_to_pgld(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                           std::uint32_t maxn = kDefaultMaxValue);
Thread pgldij_behavior(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                       std::uint32_t maxn = kDefaultMaxValue);

}  // namespace pgwb
