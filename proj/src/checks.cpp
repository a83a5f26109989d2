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

#include "pgwb/checks.hpp"

#include <sstream>

namespace pgwb {

InterpretationCheck check_interpretation(const PgldProgram& p) {
  InterpretationCheck c{pgld_behavior(p), interpret(p), {}};
  c.result = equivalent(c.direct, c.interpreted);
  return c;
}

InterpretationCheck check_interpretation_ij(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  InterpretationCheck c{pgldij_behavior(p, maxr, maxn), interpret_ij(p, maxr, maxn), {}};
  c.result = equivalent(c.direct, c.interpreted);
  return c;
}

PgldProgram canonical_jumps(const PgldProgram& p) {
  std::vector<LdInstr> out = p.instrs();
  for (auto& u : out)
    if (u.kind == LdKind::AbsJump && u.target > out.size()) u.target = 0;
  return PgldProgram(std::move(out));
}

bool check_round_trip(const PgldProgram& p) {
  const auto repr = build_repr(p);
  return decompile(repr.descr.universe(), repr.current, p.size()) == canonical_jumps(p);
}

namespace {

AuxSpotCheck aux_spots(const InstrSeq& interpreter, const ServiceInstance<MdsService>& repr, std::size_t k) {
  const MdsService& svc = repr.descr;
  const MdsUniverse& u = svc.universe();
  const Thread t = extract_thread(interpreter);
  std::vector<MdsState> states;
  const auto ex = explore_use(t, kMdFocus, repr);
  for (const auto& [ts, sid] : ex.pairs)
    if (ts == t.root()) states.push_back(ex.service_states[sid]);

  const std::uint32_t cursor = *u.spot_index(kCursorSpot);
  const std::uint32_t su = *u.spot_index(kScratchSpotU);
  const std::uint32_t sv = *u.spot_index(kScratchSpotV);
  for (std::size_t i = 1; i <= k; ++i) {
    MdsState s = repr.current;
    s.sigma[cursor] = s.sigma[*u.spot_index(ReprLayout::position_spot(i))];
    s.sigma[su] = s.sigma[cursor];
    s.sigma[sv] = s.sigma[*u.spot_index(ReprLayout::position_spot(1))];
    states.push_back(std::move(s));
  }

  AuxSpotCheck out;
  for (const auto& s : states) {
    ++out.states;
    const Thread a = interpret_from(interpreter, make_instance(svc, s));
    const Thread b = interpret_from(interpreter, make_instance(svc, clear_aux_spots(u, s)));
    if (!equivalent(a, b)) ++out.failures;
  }
  return out;
}

}  // namespace

AuxSpotCheck check_aux_spots(const PgldProgram& p) {
  return aux_spots(pgld_interpreter(), build_repr(p), p.size());
}

AuxSpotCheck check_aux_spots_ij(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  return aux_spots(pgldij_interpreter(), build_repr_ij(p, maxr, maxn), p.size());
}

std::string CorpusSummary::str() const {
  std::ostringstream out;
  out << "corpus " << (config.registers ? "pgldij" : "pgld") << " seed=" << config.seed
      << " count=" << config.count << " max-k=" << config.generator.max_k;
  if (config.registers) out << " maxr=" << config.generator.maxr << " maxn=" << config.generator.maxn;
  out << '\n';
  out << "equivalent " << equivalent << '/' << programs << '\n';
  if (!config.registers) out << "round-trip " << round_trips << '/' << programs << '\n';
  for (const auto& f : failures) out << "FAIL #" << f.index << ' ' << f.program << ": " << f.reason << '\n';
  out << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

CorpusSummary run_corpus(const CorpusConfig& cfg) {
  CorpusSummary sum;
  sum.config = cfg;
  ProgramGenerator gen(cfg.seed, cfg.generator);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    ++sum.programs;
    if (cfg.registers) {
      const auto p = gen.next_pgldij();
      const auto c = check_interpretation_ij(p, cfg.generator.maxr, cfg.generator.maxn);
      if (c.passed())
        ++sum.equivalent;
      else
        sum.failures.push_back({i, print_pgldij(p), "not equivalent: " + c.result.counterexample->str()});
      continue;
    }
    const auto p = gen.next_pgld();
    const auto c = check_interpretation(p);
    if (c.passed())
      ++sum.equivalent;
    else
      sum.failures.push_back({i, print_pgld(p), "not equivalent: " + c.result.counterexample->str()});
    if (check_round_trip(p))
      ++sum.round_trips;
    else
      sum.failures.push_back({i, print_pgld(p), "round trip differs"});
  }
  return sum;
}

}  // namespace pgwb
