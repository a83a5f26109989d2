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

#include <random>

#include "oracles.hpp"
#include "pgwb/error.hpp"
#include "pgwb/generator.hpp"
#include "pgwb/pga.hpp"
#include "pgwb/pgld.hpp"

using namespace pgwb;
using pgwb::testing::direct_pgld_thread;
using pgwb::testing::direct_pgldij_thread;

TEST_SUITE("pgld") {

TEST_CASE("parsing") {
  const auto p = parse_pgld("+f.a; ##3 ;-g.b;h.c;##0");
  REQUIRE(p.size() == 5);
  CHECK(p[0] == LdInstr::pos_test(Action::basic("f", "a")));
  CHECK(p[1] == LdInstr::jump(3));
  CHECK(p[2] == LdInstr::neg_test(Action::basic("g", "b")));
  CHECK(p[3] == LdInstr::plain(Action::basic("h", "c")));
  CHECK(print_pgld(p) == "+f.a;##3;-g.b;h.c;##0");

  const auto q = parse_pgldij("set:2:7;i##2;f.a;##1");
  CHECK(q[0] == LdInstr::reg_set(2, 7));
  CHECK(q[1] == LdInstr::ind_jump(2));
  CHECK(q.uses_registers());
  CHECK_FALSE(PgldijProgram(parse_pgld("f.a")).uses_registers());
  CHECK(print_pgldij(q) == "set:2:7;i##2;f.a;##1");
  CHECK(is_pgldij_text("f.a;i##1"));
  CHECK_FALSE(is_pgldij_text("f.a;##1"));

  CHECK_THROWS_AS(parse_pgld(""), ParseError);
  CHECK_THROWS_AS(parse_pgld("f.a;;f.b"), ParseError);
  CHECK_THROWS_AS(parse_pgld("f.a;set:1:2"), ParseError);
  CHECK_THROWS_AS(parse_pgld("f.a;i##1"), ParseError);
  CHECK_THROWS_AS(parse_pgld("f .a"), ParseError);
  CHECK_THROWS_AS(parse_pgld("##x"), ParseError);
  CHECK_THROWS_AS(parse_pgld("md.new:x"), ParseError);
  CHECK_THROWS_AS(parse_pgld("rf.eq:1:1"), ParseError);
  CHECK_THROWS_AS(parse_pgld("@s.a"), ParseError);
  CHECK_THROWS_AS(PgldProgram({}), std::invalid_argument);
  try {
    parse_pgld("f.a;f.b;;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 8);
  }
}

TEST_CASE("projection to PGA") {
  CHECK(print_pga(pgld_to_pga(parse_pgld("a.b;##0"))) == "(a.b;!;!;!)*");
  CHECK(print_pga(pgld_to_pga(parse_pgld("##1"))) == "(#0;!;!)*");
  CHECK(print_pga(pgld_to_pga(parse_pgld("##2"))) == "(!;!;!)*");
  CHECK(print_pga(pgld_to_pga(parse_pgld("f.a;##1"))) == "(f.a;#3;!;!)*");
  CHECK(pgld_behavior(parse_pgld("##1")) == Thread::deadlock());
  CHECK(pgld_behavior(parse_pgld("##2")) == Thread::stop());
  CHECK(equivalent(pgld_behavior(parse_pgld("f.a")), Thread::prefix(Action::basic("f", "a"), Thread::stop())));
  const Thread fa_stop = Thread::prefix(Action::basic("f", "a"), Thread::stop());
  CHECK(equivalent(pgld_behavior(parse_pgld("+f.a;##0;f.b")),
                   Thread::post(Action::basic("f", "a"), Thread::stop(),
                                Thread::prefix(Action::basic("f", "b"), Thread::stop())))
            .equivalent);
  CHECK(equivalent(pgld_behavior(parse_pgld("f.a;##5")), fa_stop).equivalent);
}

TEST_CASE("behaviour examples") {
  const Action fm = Action::basic("f", "m");
  CHECK(pgld_behavior(parse_pgld("##0")) == Thread::stop());
  CHECK(equivalent(pgld_behavior(parse_pgld("f.m")), Thread::post(fm, Thread::stop(), Thread::stop())).equivalent);
  const Thread self = Thread::from_nodes({ThreadNode::post(fm, 0, 1), ThreadNode::stop()}, 0);
  CHECK(equivalent(pgld_behavior(parse_pgld("+f.m;##1;##0")), self).equivalent);
  CHECK(equivalent(pgldij_behavior(parse_pgldij("f.m;i##1"), 1, 4), Thread::prefix(fm, Thread::stop())).equivalent);
}

TEST_CASE("behaviour agrees with direct execution") {
  ProgramGenerator gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen.next_pgld();
    const auto r = equivalent(pgld_behavior(p), direct_pgld_thread(p));
    CHECK_MESSAGE(r.equivalent, print_pgld(p));
  }
}

TEST_CASE("a trailing terminating jump changes nothing") {
  ProgramGenerator gen(13);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto p = i % 2 ? gen.next_pgld() : PgldProgram(testing::random_deep_program(rng, 12, 0).instrs());
    auto longer = p.instrs();
    longer.push_back(LdInstr::jump(0));
    CHECK(equivalent(pgld_behavior(PgldProgram(longer)), pgld_behavior(p)).equivalent);
  }
}

TEST_CASE("dispatch layout") {
  CHECK(dispatch_entry(5, 1, 64) == 8);
  CHECK(dispatch_entry(5, 2, 64) == 19);
  CHECK(dispatch_entry(5, 2, 2) == 13);
  CHECK(print_pgld(pgldij_to_pgld(parse_pgldij("i##1"), 1, 1)) == "##4;##0;##0;+rf.eq:1:1;##1;##0");
  CHECK(print_pgld(pgldij_to_pgld(parse_pgldij("set:1:1;f.a"), 1, 1)) ==
        "rf.set:1:1;f.a;##0;##0;+rf.eq:1:1;##1;##0");
  CHECK(print_pgld(pgldij_to_pgld(parse_pgldij("f.a;##7"), 1, 4)) == "f.a;##0;##0;##0;+rf.eq:1:1;##1;+rf.eq:1:2;##2;##0");
  CHECK_THROWS_AS(pgldij_to_pgld(parse_pgldij("i##3"), 2, 4), TranslationError);
  CHECK_THROWS_AS(pgldij_to_pgld(parse_pgldij("set:1:5"), 2, 4), TranslationError);
  CHECK_THROWS_AS(pgldij_to_pgld(parse_pgldij("set:1:0"), 2, 4), TranslationError);
  CHECK_THROWS_AS(check_reserved_foci({LdInstr::plain(Action::basic("rf", "x"))}), TranslationError);
}

TEST_CASE("register semantics") {
  CHECK(pgldij_behavior(parse_pgldij("i##1"), 1, 1) == Thread::stop());
  CHECK(pgldij_behavior(parse_pgldij("set:1:1;i##1"), 1, 1) == Thread::deadlock());
  CHECK(equivalent(pgldij_behavior(parse_pgldij("set:1:3;i##1;f.a"), 1, 4),
                   Thread::prefix(Action::basic("f", "a"), Thread::stop()))
            .equivalent);
  CHECK(equivalent(pgldij_behavior(parse_pgldij("set:1:4;i##1;f.a;f.b"), 1, 4),
                   Thread::prefix(Action::basic("f", "b"), Thread::stop()))
            .equivalent);
}

TEST_CASE("register behaviour agrees with direct execution") {
  GeneratorConfig cfg;
  cfg.max_k = 8;
  cfg.maxr = 2;
  cfg.maxn = 10;
  ProgramGenerator gen(11, cfg);
  for (int i = 0; i < 100; ++i) {
    const auto p = gen.next_pgldij();
    const auto r = equivalent(pgldij_behavior(p, cfg.maxr, cfg.maxn), direct_pgldij_thread(p, cfg.maxr));
    CHECK_MESSAGE(r.equivalent, print_pgldij(p));
  }
}

TEST_CASE("register-free programs behave as without registers") {
  ProgramGenerator gen(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = gen.next_pgld();
    CHECK(equivalent(pgldij_behavior(PgldijProgram(p), 2, 8), pgld_behavior(p)).equivalent);
  }
}

}  // TEST_SUITE
