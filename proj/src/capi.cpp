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

#include "pgwb.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <variant>

#include "pgwb/checks.hpp"
#include "pgwb/error.hpp"
#include "pgwb/molrepr.hpp"
#include "pgwb/pga.hpp"
#include "pgwb/pgld.hpp"

struct pgwb_program {
  std::variant<pgwb::InstrSeq, pgwb::PgldProgram, pgwb::PgldijProgram> value;
};

struct pgwb_thread {
  pgwb::Thread value;
};

struct pgwb_mds {
  std::shared_ptr<const pgwb::MdsUniverse> universe;
  pgwb::MdsState state;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_offset = SIZE_MAX;

pgwb_status fail(pgwb_status s, std::string msg, std::size_t offset = SIZE_MAX) {
  last_error = std::move(msg);
  last_offset = offset;
  return s;
}

template <class Fn>
pgwb_status guarded(Fn&& fn) {
  last_error.clear();
  last_offset = SIZE_MAX;
  try {
    return fn();
  } catch (const pgwb::ParseError& e) {
    return fail(PGWB_ERR_PARSE, e.what(), e.offset());
  } catch (const pgwb::TranslationError& e) {
    return fail(PGWB_ERR_TRANSLATION, e.what());
  } catch (const pgwb::RepresentationError& e) {
    return fail(PGWB_ERR_REPRESENTATION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PGWB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PGWB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PGWB_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pgwb_config config_or_default(const pgwb_config* cfg) {
  pgwb_config c;
  pgwb_config_default(&c);
  if (cfg) c = *cfg;
  if (c.maxr < 1 || c.maxn < 1) throw std::invalid_argument("maxr and maxn must be at least 1");
  return c;
}

std::optional<std::size_t> capacity(const pgwb_config& c) {
  if (c.capacity == 0) return std::nullopt;
  return static_cast<std::size_t>(c.capacity);
}

#define PGWB_REQUIRE(cond)                                                       \
  do {                                                                           \
    if (!(cond)) return fail(PGWB_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

pgwb_program* wrap(pgwb_program&& p) { return new pgwb_program(std::move(p)); }

const pgwb::PgldProgram* as_pgld(const pgwb_program* p) { return std::get_if<pgwb::PgldProgram>(&p->value); }
const pgwb::PgldijProgram* as_pgldij(const pgwb_program* p) { return std::get_if<pgwb::PgldijProgram>(&p->value); }

std::string format_trace(const pgwb::Trace& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out << i << " thread=" << s.thread_state << " service=" << s.service_state << " @s="
        << (s.cursor == pgwb::kUndefined ? std::string("_") : std::to_string(s.cursor)) << ' ' << s.method << ' '
        << pgwb::reply_char(s.reply) << ' ' << s.action.str() << '\n';
  }
  switch (trace.end) {
    case pgwb::NodeKind::Stop: out << "end S\n"; break;
    case pgwb::NodeKind::Deadlock: out << "end D\n"; break;
    case pgwb::NodeKind::Post: out << "end step-limit\n"; break;
  }
  return out.str();
}

}  // namespace

extern "C" {

void pgwb_config_default(pgwb_config* cfg) {
  if (!cfg) return;
  cfg->maxr = pgwb::kDefaultMaxRegisters;
  cfg->maxn = pgwb::kDefaultMaxValue;
  cfg->capacity = 0;
}

const char* pgwb_last_error(void) { return last_error.c_str(); }
size_t pgwb_last_error_offset(void) { return last_offset; }
void pgwb_string_free(char* s) { std::free(s); }

pgwb_status pgwb_program_parse(const char* text, pgwb_lang lang, pgwb_program** out) {
  PGWB_REQUIRE(text && out);
  return guarded([&] {
    const std::string_view t(text);
    switch (lang) {
      case PGWB_LANG_PGA: *out = wrap({pgwb::parse_pga(t)}); break;
      case PGWB_LANG_PGLD: *out = wrap({pgwb::parse_pgld(t)}); break;
      case PGWB_LANG_PGLDIJ: *out = wrap({pgwb::parse_pgldij(t)}); break;
      case PGWB_LANG_AUTO: {
        try {
          auto p = pgwb::parse_pgldij(t);
          if (p.uses_registers())
            *out = wrap({std::move(p)});
          else
            *out = wrap({pgwb::PgldProgram(p.instrs())});
        } catch (const pgwb::ParseError& ld) {
          try {
            *out = wrap({pgwb::parse_pga(t)});
          } catch (const pgwb::ParseError& pga) {
            if (pga.offset() > ld.offset()) throw;
            throw ld;
          }
        }
        break;
      }
      default: return fail(PGWB_ERR_INVALID_ARGUMENT, "unknown language");
    }
    return PGWB_OK;
  });
}

pgwb_lang pgwb_program_lang(const pgwb_program* p) {
  if (!p) return PGWB_LANG_AUTO;
  if (as_pgld(p)) return PGWB_LANG_PGLD;
  if (as_pgldij(p)) return PGWB_LANG_PGLDIJ;
  return PGWB_LANG_PGA;
}

size_t pgwb_program_length(const pgwb_program* p) {
  if (!p) return 0;
  return std::visit([](const auto& v) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, pgwb::InstrSeq>)
      return v.length();
    else
      return v.size();
  }, p->value);
}

pgwb_status pgwb_program_print(const pgwb_program* p, char** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    if (auto x = as_pgld(p))
      *out = dup(pgwb::print_pgld(*x));
    else if (auto y = as_pgldij(p))
      *out = dup(pgwb::print_pgldij(*y));
    else
      *out = dup(pgwb::print_pga(std::get<pgwb::InstrSeq>(p->value)));
    return PGWB_OK;
  });
}

void pgwb_program_free(pgwb_program* p) { delete p; }

pgwb_status pgwb_project(const pgwb_program* p, const pgwb_config* cfg, pgwb_program** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    if (auto x = as_pgld(p)) {
      *out = wrap({pgwb::pgld_to_pga(*x)});
    } else if (auto y = as_pgldij(p)) {
      *out = wrap({pgwb::pgldij_to_pgld(*y, c.maxr, c.maxn)});
    } else {
      return fail(PGWB_ERR_INVALID_ARGUMENT, "a PGA program has no projection");
    }
    return PGWB_OK;
  });
}

pgwb_status pgwb_behavior(const pgwb_program* p, const pgwb_config* cfg, pgwb_thread** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    pgwb::Thread t;
    if (auto x = as_pgld(p))
      t = pgwb::pgld_behavior(*x);
    else if (auto y = as_pgldij(p))
      t = pgwb::pgldij_behavior(*y, c.maxr, c.maxn);
    else
      t = pgwb::extract_thread(std::get<pgwb::InstrSeq>(p->value));
    *out = new pgwb_thread{std::move(t)};
    return PGWB_OK;
  });
}

pgwb_status pgwb_interpret(const pgwb_program* p, const pgwb_config* cfg, pgwb_thread** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    pgwb::Thread t;
    if (auto x = as_pgld(p))
      t = pgwb::interpret(*x, capacity(c));
    else if (auto y = as_pgldij(p))
      t = pgwb::interpret_ij(*y, c.maxr, c.maxn, capacity(c));
    else
      return fail(PGWB_ERR_INVALID_ARGUMENT, "only PGLD and PGLDij programs are interpreted");
    *out = new pgwb_thread{std::move(t)};
    return PGWB_OK;
  });
}

pgwb_status pgwb_interpret_trace(const pgwb_program* p, const pgwb_config* cfg, const char* replies,
                                 size_t max_steps, char** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    std::vector<bool> ext;
    for (const char* r = replies; r && *r; ++r) {
      if (*r != 'T' && *r != 'F') return fail(PGWB_ERR_INVALID_ARGUMENT, "replies must be T or F");
      ext.push_back(*r == 'T');
    }
    pgwb::Trace trace;
    if (auto x = as_pgld(p))
      trace = pgwb::trace_interpretation(pgwb::pgld_interpreter(), pgwb::build_repr(*x, capacity(c)), ext, max_steps);
    else if (auto y = as_pgldij(p))
      trace = pgwb::trace_interpretation(pgwb::pgldij_interpreter(),
                                         pgwb::build_repr_ij(*y, c.maxr, c.maxn, capacity(c)), ext, max_steps);
    else
      return fail(PGWB_ERR_INVALID_ARGUMENT, "only PGLD and PGLDij programs are interpreted");
    *out = dup(format_trace(trace));
    return PGWB_OK;
  });
}

size_t pgwb_thread_size(const pgwb_thread* t) { return t ? t->value.size() : 0; }

pgwb_status pgwb_thread_dump(const pgwb_thread* t, char** out) {
  PGWB_REQUIRE(t && out);
  return guarded([&] {
    *out = dup(t->value.dump());
    return PGWB_OK;
  });
}

pgwb_status pgwb_thread_project(const pgwb_thread* t, size_t depth, char** out) {
  PGWB_REQUIRE(t && out);
  return guarded([&] {
    *out = dup(pgwb::project(depth, t->value).str() + "\n");
    return PGWB_OK;
  });
}

void pgwb_thread_free(pgwb_thread* t) { delete t; }

pgwb_status pgwb_equivalent(const pgwb_thread* a, const pgwb_thread* b, int* equal, char** counterexample) {
  PGWB_REQUIRE(a && b && equal);
  return guarded([&] {
    const auto r = pgwb::equivalent(a->value, b->value);
    *equal = r.equivalent ? 1 : 0;
    if (counterexample) *counterexample = r.counterexample ? dup(r.counterexample->str()) : nullptr;
    return PGWB_OK;
  });
}

pgwb_status pgwb_construction_program(const pgwb_program* p, const pgwb_config* cfg, char** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    if (auto x = as_pgld(p))
      *out = dup(pgwb::print_pga(pgwb::pgld_to_md(*x)));
    else if (auto y = as_pgldij(p))
      *out = dup(pgwb::print_pga(pgwb::pgldij_to_md(*y, c.maxr, c.maxn)));
    else
      return fail(PGWB_ERR_INVALID_ARGUMENT, "only PGLD and PGLDij programs are represented");
    return PGWB_OK;
  });
}

pgwb_status pgwb_represent(const pgwb_program* p, const pgwb_config* cfg, pgwb_mds** out) {
  PGWB_REQUIRE(p && out);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    std::optional<pgwb::ServiceInstance<pgwb::MdsService>> svc;
    if (auto x = as_pgld(p))
      svc = pgwb::build_repr(*x, capacity(c));
    else if (auto y = as_pgldij(p))
      svc = pgwb::build_repr_ij(*y, c.maxr, c.maxn, capacity(c));
    else
      return fail(PGWB_ERR_INVALID_ARGUMENT, "only PGLD and PGLDij programs are represented");
    *out = new pgwb_mds{svc->descr.universe_ptr(), svc->current};
    return PGWB_OK;
  });
}

pgwb_status pgwb_mds_dump(const pgwb_mds* m, int json, char** out) {
  PGWB_REQUIRE(m && out);
  return guarded([&] {
    *out = dup(json ? pgwb::dump_state_json(*m->universe, m->state) + "\n" : pgwb::dump_state(*m->universe, m->state));
    return PGWB_OK;
  });
}

pgwb_status pgwb_mds_parse(const char* text, pgwb_mds** out) {
  PGWB_REQUIRE(text && out);
  return guarded([&] {
    auto d = pgwb::parse_dump(text);
    *out = new pgwb_mds{std::move(d.universe), std::move(d.state)};
    return PGWB_OK;
  });
}

void pgwb_mds_free(pgwb_mds* m) { delete m; }

pgwb_status pgwb_decompile(const pgwb_mds* m, size_t k, pgwb_program** out) {
  PGWB_REQUIRE(m && out);
  return guarded([&] {
    *out = wrap({pgwb::decompile(*m->universe, m->state, k)});
    return PGWB_OK;
  });
}

pgwb_status pgwb_check(const pgwb_program* p, const pgwb_config* cfg, int* passed, char** report) {
  PGWB_REQUIRE(p && passed);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    std::ostringstream out;
    bool ok = true;
    pgwb::InterpretationCheck check;
    if (auto x = as_pgld(p)) {
      check = pgwb::check_interpretation(*x);
    } else if (auto y = as_pgldij(p)) {
      check = pgwb::check_interpretation_ij(*y, c.maxr, c.maxn);
    } else {
      return fail(PGWB_ERR_INVALID_ARGUMENT, "only PGLD and PGLDij programs are checked");
    }
    out << "interpretation " << (check.passed() ? "equivalent" : "NOT equivalent") << '\n';
    if (!check.passed()) {
      ok = false;
      out << "counterexample (left direct, right interpreted): " << check.result.counterexample->str() << '\n';
    }
    if (auto x = as_pgld(p)) {
      const bool rt = pgwb::check_round_trip(*x);
      ok = ok && rt;
      out << "round-trip " << (rt ? "ok" : "DIFFERS") << '\n';
    }
    *passed = ok ? 1 : 0;
    if (report) *report = dup(out.str());
    return PGWB_OK;
  });
}

pgwb_status pgwb_corpus(size_t count, size_t max_k, uint64_t seed, int registers, const pgwb_config* cfg,
                        int* passed, char** summary) {
  PGWB_REQUIRE(passed);
  return guarded([&] {
    const pgwb_config c = config_or_default(cfg);
    pgwb::CorpusConfig cc;
    cc.count = count;
    cc.seed = seed;
    cc.registers = registers != 0;
    cc.generator.max_k = max_k;
    cc.generator.maxr = c.maxr;
    cc.generator.maxn = c.maxn;
    const auto sum = pgwb::run_corpus(cc);
    *passed = sum.passed() ? 1 : 0;
    if (summary) *summary = dup(sum.str());
    return PGWB_OK;
  });
}

}  // extern "C"
