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

#include "pgwb/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgwb {

ProgramGenerator::ProgramGenerator(std::uint64_t seed, GeneratorConfig cfg) : cfg_(cfg), rng_(seed) {
  if (cfg_.max_k < 1 || cfg_.foci < 1 || cfg_.methods < 1 || cfg_.maxr < 1 || cfg_.maxn < 1)
    throw std::invalid_argument("generator bounds must be at least 1");
}

// Uniform in [0, n).
std::uint32_t ProgramGenerator::below(std::uint32_t n) {
  return static_cast<std::uint32_t>(rng_() % n);
}

LdInstr ProgramGenerator::plain_instr(std::size_t k) {
  const std::uint32_t k32 = static_cast<std::uint32_t>(k);
  const std::uint32_t roll = below(10);
  if (roll < 4) {
    Action a = Action::basic("f" + std::to_string(below(cfg_.foci)), "m" + std::to_string(below(cfg_.methods)));
    switch (below(3)) {
      case 0: return LdInstr::plain(std::move(a));
      case 1: return LdInstr::pos_test(std::move(a));
      default: return LdInstr::neg_test(std::move(a));
    }
  }
  if (roll < 8) return LdInstr::jump(1 + below(k32));
  return LdInstr::jump(below(2) == 0 ? 0 : k32 + 1 + below(k32 + 1));
}

PgldProgram ProgramGenerator::next_pgld() {
  const std::size_t k = 1 + below(static_cast<std::uint32_t>(cfg_.max_k));
  std::vector<LdInstr> instrs;
  for (std::size_t j = 0; j < k; ++j) instrs.push_back(plain_instr(k));
  return PgldProgram(std::move(instrs));
}

PgldijProgram ProgramGenerator::next_pgldij() {
  const std::size_t k = 1 + below(static_cast<std::uint32_t>(cfg_.max_k));
  const std::uint32_t top = std::min<std::uint32_t>(cfg_.maxn, static_cast<std::uint32_t>(k) + 2);
  std::vector<LdInstr> instrs;
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint32_t roll = below(100);
    if (roll < 15)
      instrs.push_back(LdInstr::reg_set(1 + below(cfg_.maxr), 1 + below(top)));
    else if (roll < 30)
      instrs.push_back(LdInstr::ind_jump(1 + below(cfg_.maxr)));
    else
      instrs.push_back(plain_instr(k));
  }
  return PgldijProgram(std::move(instrs));
}

}  // namespace pgwb
