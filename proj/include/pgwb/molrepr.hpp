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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgwb/mds.hpp"
#include "pgwb/pga.hpp"
#include "pgwb/pgld.hpp"
#include "pgwb/thread.hpp"

namespace pgwb {

// Reserved spots: the interpretation cursor and two scratch spots.
inline constexpr std::string_view kCursorSpot = "@s";
inline constexpr std::string_view kScratchSpotU = "@u";
inline constexpr std::string_view kScratchSpotV = "@v";

// The nine field names of a program representation.
const std::vector<std::string>& repr_fields();

// Spot names of a representation of a program of length k using
// `registers` registers (0 for PGLD).
struct ReprLayout {
  std::size_t k = 0;
  std::uint32_t registers = 0;

  // @s<j>, j in [1, k + 2].
  static std::string position_spot(std::size_t j);
  // @r<i>, i in [1, registers].
  static std::string register_spot(std::uint32_t i);

  std::vector<std::string> reserved_spots() const;
};

// Universe of the representation: the program's foci and methods plus the
// reserved spots, and the nine fields.
std::shared_ptr<const MdsUniverse> repr_universe(const std::vector<LdInstr>& instrs,
                                                 std::uint32_t registers,
                                                 std::optional<std::size_t> capacity = std::nullopt);

// The construction program in three parts: atom creations, one block per
// instruction, and the closing part (stop fields, register initialisation,
// cursor placement and halt).
struct ConstructionParts {
  std::vector<PrimInstr> creations;
  std::vector<std::vector<PrimInstr>> blocks;
  std::vector<PrimInstr> closing;

  InstrSeq program() const;
};

// Throws TranslationError on reserved foci.
ConstructionParts pgld_construction(const PgldProgram& p);
InstrSeq pgld_to_md(const PgldProgram& p);
// Throws TranslationError as pgldij_to_pgld does.
ConstructionParts pgldij_construction(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                                      std::uint32_t maxn = kDefaultMaxValue);
InstrSeq pgldij_to_md(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                      std::uint32_t maxn = kDefaultMaxValue);

// The service holding the representation, i.e. the construction program
// applied to the initial service. Divergent only if `capacity` is too small.
ServiceInstance<MdsService> build_repr(const PgldProgram& p,
                                       std::optional<std::size_t> capacity = std::nullopt);
ServiceInstance<MdsService> build_repr_ij(const PgldijProgram& p,
                                          std::uint32_t maxr = kDefaultMaxRegisters,
                                          std::uint32_t maxn = kDefaultMaxValue,
                                          std::optional<std::size_t> capacity = std::nullopt);

// The fixed interpreters for PGLD (13 instructions) and PGLDij (20
// instructions), repeated, every action on focus md.
InstrSeq pgld_interpreter();
InstrSeq pgldij_interpreter();

// tau-abstracted behaviour of `interpreter` using the service on focus md.
Thread interpret_from(const InstrSeq& interpreter, const ServiceInstance<MdsService>& svc);
Thread interpret(const PgldProgram& p, std::optional<std::size_t> capacity = std::nullopt);
Thread interpret_ij(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                    std::uint32_t maxn = kDefaultMaxValue,
                    std::optional<std::size_t> capacity = std::nullopt);

// One step of an interpretation run. For md actions `reply` is the
// service's reply and `action` the action it produced; for external actions
// `reply` is the one supplied to the run.
struct TraceStep {
  StateId thread_state = 0;
  std::uint32_t service_state = 0;  // index in order of first visit
  AtomId cursor = kUndefined;       // contents of @s before the step
  std::string method;
  Reply reply = Reply::T;
  Action action;
};

struct Trace {
  std::vector<TraceStep> steps;
  // Stop, Deadlock, or Post when the step limit was reached.
  NodeKind end = NodeKind::Post;
};

// Runs `interpreter` against the service. External actions receive the
// replies of `external_replies` in turn (true = T), then T.
Trace trace_interpretation(const InstrSeq& interpreter, const ServiceInstance<MdsService>& svc,
                           const std::vector<bool>& external_replies = {},
                           std::size_t max_steps = 1000);

// Reads back a PGLD program of length k from a representation. Out-of-range
// jumps come back as ##0; focus and method names are the least spot names
// not starting with `@` that hold the linked atoms. Throws
// RepresentationError naming the offending position.
PgldProgram decompile(const MdsUniverse& u, const MdsState& s, std::size_t k);

// The state with @u and @v undefined.
MdsState clear_aux_spots(const MdsUniverse& u, MdsState s);

}  // namespace pgwb
