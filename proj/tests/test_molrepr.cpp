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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pgwb/checks.hpp"
#include "pgwb/error.hpp"
#include "pgwb/generator.hpp"
#include "pgwb/molrepr.hpp"

using namespace pgwb;

namespace {

const std::string kMd(kMdFocus);

MdsState after(const MdsService& svc, std::vector<PrimInstr> instrs) {
  instrs.push_back(PrimInstr::halt());
  return apply_compose(extract_thread(InstrSeq(std::move(instrs))), kMdFocus, make_instance(svc, svc.initial()))
      .current;
}

AtomId field_of(const MdsService& svc, const MdsState& s, std::string_view spot, std::string_view f) {
  const auto v = svc.field(s, svc.spot(s, spot), f);
  REQUIRE(v.has_value());
  return *v;
}

std::size_t count_foci(const PgldProgram& p, bool methods) {
  std::vector<std::string> seen;
  for (const auto& u : p.instrs())
    if (u.has_action()) seen.push_back(methods ? u.action.method() : u.action.focus());
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

}  // namespace

TEST_SUITE("molrepr") {

TEST_CASE("construction") {
  const auto parts = pgld_construction(parse_pgld("+f.a;##0"));
  CHECK(print_pga(InstrSeq(parts.creations)) ==
        "md.new:f;md.new:a;md.new:@s1;md.new:@s2;md.new:@s3;md.new:@s4");
  REQUIRE(parts.blocks.size() == 2);
  CHECK(print_pga(InstrSeq(parts.blocks[0])) ==
        "md.addfield:@s1:focus;md.addfield:@s1:method;md.addfield:@s1:pos;md.addfield:@s1:neg;"
        "md.setfield:@s1:focus:f;md.setfield:@s1:method:a;md.setfield:@s1:pos:@s2;md.setfield:@s1:neg:@s3");
  CHECK(print_pga(InstrSeq(parts.blocks[1])) == "md.addfield:@s2:stop");
  CHECK(print_pga(InstrSeq(parts.closing)) == "md.addfield:@s3:stop;md.addfield:@s4:stop;md.set:@s:@s1;!");
  CHECK(pgld_to_md(parse_pgld("+f.a;##0")) == parts.program());

  CHECK(print_pga(InstrSeq(pgld_construction(parse_pgld("##1;##9")).blocks[0])) ==
        "md.addfield:@s1:ajmp;md.setfield:@s1:ajmp:@s1");
  CHECK(print_pga(InstrSeq(pgld_construction(parse_pgld("##1;##9")).blocks[1])) == "md.addfield:@s2:stop");

  const auto ij = pgldij_construction(parse_pgldij("set:2:1;i##2"), 2, 4);
  CHECK(print_pga(InstrSeq(ij.blocks[0])) ==
        "md.addfield:@s1:reg;md.addfield:@s1:cont;md.addfield:@s1:next;md.setfield:@s1:reg:@r2;"
        "md.setfield:@s1:cont:@s1;md.setfield:@s1:next:@s2");
  CHECK(print_pga(InstrSeq(ij.blocks[1])) == "md.addfield:@s2:ajmp;md.setfield:@s2:ajmp:@r2");
  CHECK(print_pga(InstrSeq(ij.closing)) ==
        "md.addfield:@s3:stop;md.addfield:@s4:stop;md.addfield:@r1:ajmp;md.setfield:@r1:ajmp:@s4;"
        "md.addfield:@r2:ajmp;md.setfield:@r2:ajmp:@s4;md.set:@s:@s1;!");
  CHECK_THROWS_AS(pgldij_construction(parse_pgldij("set:1:9"), 2, 4), TranslationError);
}

TEST_CASE("construction of single instructions") {
  const auto halt = pgld_construction(parse_pgld("##0"));
  CHECK(print_pga(halt.program()) ==
        "md.new:@s1;md.new:@s2;md.new:@s3;md.addfield:@s1:stop;md.addfield:@s2:stop;md.addfield:@s3:stop;"
        "md.set:@s:@s1;!");
  const auto act = pgld_construction(parse_pgld("f.m"));
  CHECK(print_pga(InstrSeq(act.creations)) == "md.new:f;md.new:m;md.new:@s1;md.new:@s2;md.new:@s3");
  CHECK(print_pga(InstrSeq(act.blocks[0])).ends_with(
      "md.setfield:@s1:focus:f;md.setfield:@s1:method:m;md.setfield:@s1:pos:@s2;md.setfield:@s1:neg:@s2"));

  const auto h = build_repr(parse_pgld("##0"));
  CHECK(h.current.atoms == 3);
  CHECK(h.descr.field(h.current, h.descr.spot(h.current, "@s1"), "stop").has_value());
  CHECK(h.descr.spot(h.current, "@s") == h.descr.spot(h.current, "@s1"));

  const auto r = build_repr(parse_pgld("+f.m;##1;##3"));
  const MdsService& svc = r.descr;
  CHECK(field_of(svc, r.current, "@s1", "focus") == svc.spot(r.current, "f"));
  CHECK(field_of(svc, r.current, "@s1", "method") == svc.spot(r.current, "m"));
  CHECK(field_of(svc, r.current, "@s1", "pos") == svc.spot(r.current, "@s2"));
  CHECK(field_of(svc, r.current, "@s1", "neg") == svc.spot(r.current, "@s3"));
  CHECK(field_of(svc, r.current, "@s2", "ajmp") == svc.spot(r.current, "@s1"));
  CHECK(field_of(svc, r.current, "@s3", "ajmp") == svc.spot(r.current, "@s3"));
}

TEST_CASE("each block touches only its own position") {
  ProgramGenerator gen(23);
  for (int n = 0; n < 20; ++n) {
    const auto p = gen.next_pgld();
    const auto parts = pgld_construction(p);
    const MdsService svc(repr_universe(p.instrs(), 0));
    std::vector<PrimInstr> prefix = parts.creations;
    for (std::size_t j = 1; j <= p.size(); ++j) {
      const MdsState before = after(svc, prefix);
      prefix.insert(prefix.end(), parts.blocks[j - 1].begin(), parts.blocks[j - 1].end());
      const MdsState now = after(svc, prefix);
      REQUIRE_FALSE(now.divergent);
      CHECK(now.sigma == before.sigma);
      CHECK(now.atoms == before.atoms);
      const AtomId own = svc.spot(now, ReprLayout::position_spot(j));
      for (AtomId a = 1; a <= now.atoms; ++a)
        if (a != own)
          for (std::uint32_t f = 0; f < now.field_count; ++f) CHECK(now.slot(a, f) == before.slot(a, f));
    }
  }
}

TEST_CASE("representation state") {
  const auto repr = build_repr(parse_pgld("f.a;##1"));
  const MdsService& svc = repr.descr;
  const MdsState& s = repr.current;
  CHECK(well_formed(s));
  CHECK(svc.spot(s, "@s") == svc.spot(s, "@s1"));
  CHECK(field_of(svc, s, "@s1", "focus") == svc.spot(s, "f"));
  CHECK(field_of(svc, s, "@s1", "method") == svc.spot(s, "a"));
  CHECK(field_of(svc, s, "@s1", "pos") == svc.spot(s, "@s2"));
  CHECK(field_of(svc, s, "@s2", "ajmp") == svc.spot(s, "@s1"));
  CHECK(svc.field(s, svc.spot(s, "@s3"), "stop").has_value());
  CHECK(svc.spot(s, "@u") == kUndefined);
  CHECK(s.atoms == 2 + 4);
}

TEST_CASE("interpreters") {
  CHECK(pgld_interpreter().prefix().empty());
  CHECK(pgld_interpreter().loop().size() == 13);
  CHECK(pgldij_interpreter().loop().size() == 20);
  CHECK(extract_thread(pgld_interpreter()).size() <= 15);
  CHECK(extract_thread(pgldij_interpreter()).size() <= 22);
}

TEST_CASE("interpretation examples") {
  const Action fa = Action::basic("f", "a"), fb = Action::basic("f", "b");
  CHECK(equivalent(interpret(parse_pgld("f.a")), Thread::prefix(fa, Thread::stop())));
  CHECK(interpret(parse_pgld("##1")) == Thread::deadlock());
  CHECK(interpret(parse_pgld("##0;f.a")) == Thread::stop());
  CHECK(equivalent(interpret(parse_pgld("+f.a;##0;f.b")),
                   Thread::post(fa, Thread::stop(), Thread::prefix(fb, Thread::stop())))
            .equivalent);
  CHECK(equivalent(interpret(parse_pgld("-f.a;##0;f.b")),
                   Thread::post(fa, Thread::prefix(fb, Thread::stop()), Thread::stop()))
            .equivalent);
  CHECK(equivalent(interpret(parse_pgld("f.a;f.b;##1")), pgld_behavior(parse_pgld("f.a;f.b;##1"))).equivalent);

  CHECK(interpret_ij(parse_pgldij("i##1"), 1, 1) == Thread::stop());
  CHECK(interpret_ij(parse_pgldij("set:1:1;i##1"), 1, 1) == Thread::deadlock());
  CHECK(equivalent(interpret_ij(parse_pgldij("set:1:4;i##1;f.a;f.b"), 1, 4), Thread::prefix(fb, Thread::stop()))
            .equivalent);
}

TEST_CASE("interpretation against the direct behaviour") {
  const Action fm = Action::basic("f", "m");
  CHECK(interpret(parse_pgld("##0")) == Thread::stop());
  const Thread forever = Thread::from_nodes({ThreadNode::post(fm, 0, 0)}, 0);
  CHECK(equivalent(interpret(parse_pgld("f.m;##1")), forever).equivalent);
  for (const char* text : {"##0", "f.m;##1", "+f.m;##0;##2", "+f.m;##1;##0"})
    CHECK(equivalent(interpret(parse_pgld(text)), pgld_behavior(parse_pgld(text))).equivalent);
}

TEST_CASE("indirect jump representation") {
  const auto repr = build_repr_ij(parse_pgldij("i##1"), 1, 4);
  const MdsService& svc = repr.descr;
  CHECK(field_of(svc, repr.current, "@r1", "ajmp") == svc.spot(repr.current, "@s3"));
  CHECK(field_of(svc, repr.current, "@s1", "ajmp") == svc.spot(repr.current, "@r1"));
  CHECK(interpret_ij(parse_pgldij("i##1"), 1, 4) == Thread::stop());

  // The run loops, but every state after the register set points @r1 at @s1.
  const auto looping = build_repr_ij(parse_pgldij("set:1:1;i##1"), 1, 4);
  const auto ex = explore_use(extract_thread(pgldij_interpreter()), kMdFocus, looping);
  const bool rewired = std::any_of(ex.service_states.begin(), ex.service_states.end(), [&](const MdsState& s) {
    return !s.divergent && looping.descr.field(s, looping.descr.spot(s, "@r1"), "ajmp") == looping.descr.spot(s, "@s1");
  });
  CHECK(rewired);
}

TEST_CASE("register set rewires the register") {
  const auto repr = build_repr_ij(parse_pgldij("set:1:2;##0"), 1, 4);
  const MdsService& svc = repr.descr;
  CHECK(field_of(svc, repr.current, "@r1", "ajmp") == svc.spot(repr.current, "@s4"));
  const auto run = apply_compose(extract_thread(pgldij_interpreter()), kMdFocus, repr);
  REQUIRE_FALSE(run.is_divergent());
  CHECK(field_of(svc, run.current, "@r1", "ajmp") == svc.spot(run.current, "@s2"));
  CHECK(svc.spot(run.current, "@s") == svc.spot(run.current, "@s2"));
}

TEST_CASE("decompile") {
  for (const char* text : {"f.a", "+f.m;##1;f.m", "+f.a;##0;-g.b;##2", "##1;##7;f.a"}) {
    const auto p = parse_pgld(text);
    const auto repr = build_repr(p);
    CHECK(decompile(repr.descr.universe(), repr.current, p.size()) == pgwb::canonical_jumps(p));
  }
  CHECK(print_pgld(canonical_jumps(parse_pgld("##1;##7;f.a"))) == "##1;##0;f.a");
  const auto nine = build_repr(parse_pgld("##9"));
  CHECK(print_pgld(decompile(nine.descr.universe(), nine.current, 1)) == "##0");

  const auto p = parse_pgld("f.a;##0");
  const auto repr = build_repr(p);
  const MdsService& svc = repr.descr;
  const auto& u = svc.universe();
  auto run = [&](std::string_view m) { return svc.step(m, repr.current).next; };
  CHECK_THROWS_AS(decompile(u, run("set:@s:@s2"), 2), RepresentationError);
  CHECK_THROWS_AS(decompile(u, run("set:@s2:@s1"), 2), RepresentationError);
  CHECK_THROWS_AS(decompile(u, run("rmfield:@s2:stop"), 2), RepresentationError);
  CHECK_THROWS_AS(decompile(u, svc.step("setfield:@s1:pos:@s1", repr.current).next, 2), RepresentationError);
  CHECK_THROWS_AS(decompile(u, svc.divergent(), 2), RepresentationError);
  try {
    decompile(u, run("rmfield:@s2:stop"), 2);
  } catch (const RepresentationError& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
  MdsState jumpy = svc.step("addfield:@s2:ajmp", run("rmfield:@s2:stop")).next;
  jumpy = svc.step("setfield:@s2:ajmp:@s3", jumpy).next;
  CHECK_THROWS_AS(decompile(u, jumpy, 2), RepresentationError);
}

TEST_CASE("clearing scratch spots") {
  const auto repr = build_repr(parse_pgld("f.a"));
  const MdsService& svc = repr.descr;
  MdsState s = svc.step("set:@u:@s1", repr.current).next;
  s = svc.step("set:@v:f", s).next;
  CHECK(s != repr.current);
  CHECK(clear_aux_spots(svc.universe(), s) == repr.current);
  CHECK(clear_aux_spots(svc.universe(), svc.divergent()) == svc.divergent());
}

TEST_CASE("explored service states stay bounded") {
  ProgramGenerator gen(29);
  const Thread t = extract_thread(pgld_interpreter());
  for (int n = 0; n < 30; ++n) {
    const auto p = gen.next_pgld();
    const auto ex = explore_use(t, kMdFocus, build_repr(p));
    const std::size_t bound = (p.size() + 2) * (count_foci(p, false) + 1) * (count_foci(p, true) + 1) + 1;
    CHECK(ex.service_states.size() <= bound);
    CHECK(ex.pairs.size() <= t.size() * ex.service_states.size());
  }
}

TEST_CASE("trace") {
  const auto tr = trace_interpretation(pgld_interpreter(), build_repr(parse_pgld("+f.a;##0;f.b")), {false});
  CHECK(tr.end == NodeKind::Stop);
  std::vector<std::string> external;
  for (const auto& s : tr.steps)
    if (s.reply == Reply::M) external.push_back(s.action.str());
  CHECK(external == std::vector<std::string>{"f.a", "f.b"});
  const auto genact = std::find_if(tr.steps.begin(), tr.steps.end(), [](const TraceStep& s) { return s.reply == Reply::M; });
  REQUIRE(genact != tr.steps.end());
  CHECK(genact->method == "genact:@u:@v");
  CHECK((genact + 1)->method == "a");
  CHECK((genact + 1)->reply == Reply::F);

  const auto loop = trace_interpretation(pgld_interpreter(), build_repr(parse_pgld("f.a;##1")), {}, 50);
  CHECK(loop.end == NodeKind::Post);
  CHECK(loop.steps.size() == 50);
  CHECK(trace_interpretation(pgld_interpreter(), build_repr(parse_pgld("##1")), {}, 40).end == NodeKind::Post);
}

TEST_CASE("interpretation of action-heavy programs") {
  std::mt19937_64 rng(43);
  std::size_t states = 0;
  for (int n = 0; n < 150; ++n) {
    const auto ij = testing::random_deep_program(rng, 15, 0);
    const PgldProgram p(ij.instrs());
    const auto c = check_interpretation(p);
    states += c.direct.size();
    CHECK_MESSAGE(c.passed(), print_pgld(p));
    CHECK(equivalent(c.direct, testing::direct_pgld_thread(p)).equivalent);
    CHECK(check_round_trip(p));
  }
  CHECK(states > 150 * 4);
  states = 0;
  for (int n = 0; n < 60; ++n) {
    const auto p = testing::random_deep_program(rng, 10, 2);
    const auto c = check_interpretation_ij(p, 2, 16);
    states += c.direct.size();
    CHECK_MESSAGE(c.passed(), print_pgldij(p));
    CHECK(equivalent(c.direct, testing::direct_pgldij_thread(p, 2)).equivalent);
  }
  CHECK(states > 60 * 3);
}

TEST_CASE("checks") {
  ProgramGenerator gen(31);
  for (int n = 0; n < 20; ++n) {
    const auto p = gen.next_pgld();
    CHECK(check_interpretation(p).passed());
    CHECK(check_round_trip(p));
    CHECK(check_aux_spots(p).passed());
  }
  GeneratorConfig g;
  g.max_k = 6;
  ProgramGenerator gij(37, g);
  for (int n = 0; n < 10; ++n) {
    const auto p = gij.next_pgldij();
    CHECK(check_interpretation_ij(p, g.maxr, g.maxn).passed());
    CHECK(check_aux_spots_ij(p, g.maxr, g.maxn).passed());
  }

  CorpusConfig cfg;
  cfg.count = 25;
  cfg.seed = 7;
  const auto a = run_corpus(cfg), b = run_corpus(cfg);
  CHECK(a.passed());
  CHECK(a.str() == b.str());
  CHECK(a.str().starts_with("corpus pgld seed=7 count=25 max-k=15\nequivalent 25/25\nround-trip 25/25\n"));
}

}  // TEST_SUITE
