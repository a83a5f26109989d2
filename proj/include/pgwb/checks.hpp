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
#include <vector>

#include "pgwb/generator.hpp"
#include "pgwb/molrepr.hpp"
#include "pgwb/pgld.hpp"
#include "pgwb/thread.hpp"

namespace pgwb {

// Direct behaviour against interpreted behaviour of one program.
struct InterpretationCheck {
  Thread direct;
  Thread interpreted;
  EquivalenceResult result;

  bool passed() const noexcept { return result.equivalent; }
};

InterpretationCheck check_interpretation(const PgldProgram& p);
InterpretationCheck check_interpretation_ij(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                                            std::uint32_t maxn = kDefaultMaxValue);

// `p` with every jump outside [1, k] replaced by ##0.
PgldProgram canonical_jumps(const PgldProgram& p);
// decompile(build_repr(p), k) == canonical_jumps(p).
bool check_round_trip(const PgldProgram& p);

// Interpretation started from each checked state agrees with interpretation
// from the same state with @u and @v cleared. Checked states: every state the
// service is in when the interpreter re-enters its loop, and for each
// position i the representation with the cursor on @s_i and @u, @v pointing
// at program atoms.
struct AuxSpotCheck {
  std::size_t states = 0;
  std::size_t failures = 0;

  bool passed() const noexcept { return failures == 0; }
};

AuxSpotCheck check_aux_spots(const PgldProgram& p);
AuxSpotCheck check_aux_spots_ij(const PgldijProgram& p, std::uint32_t maxr = kDefaultMaxRegisters,
                                std::uint32_t maxn = kDefaultMaxValue);

struct CorpusConfig {
  std::size_t count = 100;
  std::uint64_t seed = 1;
  bool registers = false;  // PGLDij corpus
  GeneratorConfig generator;
};

struct CorpusFailure {
  std::size_t index = 0;
  std::string program;
  std::string reason;
};

struct CorpusSummary {
  CorpusConfig config;
  std::size_t programs = 0;
  std::size_t equivalent = 0;
  std::size_t round_trips = 0;  // PGLD only
  std::vector<CorpusFailure> failures;

  bool passed() const noexcept { return failures.empty(); }
  // Deterministic text report.
  std::string str() const;
};

CorpusSummary run_corpus(const CorpusConfig& cfg);

}  // namespace pgwb
