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
#include <random>

#include "pgwb/pgld.hpp"

namespace pgwb {

struct GeneratorConfig {
  std::size_t max_k = 15;
  std::uint32_t foci = 3;
  std::uint32_t methods = 3;
  std::uint32_t maxr = 3;
  std::uint32_t maxn = kDefaultMaxValue;
};

// Seeded random programs over foci f0, f1, ... and methods m0, m1, ...
// Lengths are uniform in [1, max_k]. Instructions are 40% basic or test
// instructions, 40% jumps within the program and 20% jumps outside it; for
// PGLDij, register set and indirect jump instructions take 15% each and the
// rest is drawn as for PGLD.
class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint64_t seed, GeneratorConfig cfg = {});

  PgldProgram next_pgld();
  PgldijProgram next_pgldij();

 private:
  LdInstr plain_instr(std::size_t k);
  std::uint32_t below(std::uint32_t n);

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace pgwb
