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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pgwb.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

struct Freer {
  void operator()(pgwb_program* p) const { pgwb_program_free(p); }
  void operator()(pgwb_thread* t) const { pgwb_thread_free(t); }
  void operator()(pgwb_mds* m) const { pgwb_mds_free(m); }
  void operator()(char* s) const { pgwb_string_free(s); }
};
using Program = std::unique_ptr<pgwb_program, Freer>;
using ThreadPtr = std::unique_ptr<pgwb_thread, Freer>;
using Mds = std::unique_ptr<pgwb_mds, Freer>;
using Str = std::unique_ptr<char, Freer>;

struct Failure {
  int code;
};

void ok(pgwb_status s, const std::string& what) {
  if (s == PGWB_OK) return;
  std::cerr << "pgwb: " << what << ": " << pgwb_last_error() << '\n';
  throw Failure{kExitError};
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "pgwb: cannot read " << path << '\n';
    throw Failure{kExitError};
  }
  return {std::istreambuf_iterator<char>(in), {}};
}

pgwb_lang lang_for(const std::string& flag, const std::string& path) {
  if (flag == "pga") return PGWB_LANG_PGA;
  if (flag == "pgld") return PGWB_LANG_PGLD;
  if (flag == "pgldij") return PGWB_LANG_PGLDIJ;
  if (flag != "auto") return PGWB_LANG_AUTO;
  auto ends = [&](const std::string& ext) {
    return path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends(".pgldij")) return PGWB_LANG_PGLDIJ;
  if (ends(".pgld")) return PGWB_LANG_PGLD;
  if (ends(".pga")) return PGWB_LANG_PGA;
  return PGWB_LANG_AUTO;
}

Program load(const std::string& path, const std::string& lang) {
  const std::string text = read_input(path);
  pgwb_program* p = nullptr;
  ok(pgwb_program_parse(text.c_str(), lang_for(lang, path), &p), path);
  return Program(p);
}

void print(Str s) { std::cout << s.get(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Program algebra workbench: PGLD/PGLDij projections, molecule representations and interpretation"};
  app.require_subcommand(1);

  pgwb_config cfg;
  pgwb_config_default(&cfg);
  std::string lang = "auto";
  app.add_option("--maxr", cfg.maxr, "number of registers")->check(CLI::PositiveNumber);
  app.add_option("--maxn", cfg.maxn, "largest register value")->check(CLI::PositiveNumber);
  app.add_option("--capacity", cfg.capacity, "atom capacity of the representation service, 0 = unbounded");
  app.add_option("--lang", lang, "input language; default from the file extension, else detected")
      ->check(CLI::IsMember({"auto", "pga", "pgld", "pgldij"}));

  std::string file;
  auto* project = app.add_subcommand("project", "PGLD to PGA, or PGLDij to PGLD");
  project->add_option("file", file, "program file, - for stdin")->required();

  std::size_t depth = 0;
  auto* extract = app.add_subcommand("extract", "thread of a program");
  extract->add_option("file", file)->required();
  auto* depth_opt = extract->add_option("--depth", depth, "print the depth-limited approximation instead");

  bool only_program = false, only_state = false, json = false;
  auto* represent = app.add_subcommand("represent", "construction program and representation dump");
  represent->add_option("file", file)->required();
  represent->add_flag("--program", only_program, "construction program only");
  represent->add_flag("--state", only_state, "representation dump only");
  represent->add_flag("--json", json, "dump as JSON");

  bool trace = false;
  std::string replies;
  std::size_t max_steps = 1000;
  auto* interpret = app.add_subcommand("interpret", "behaviour of the molecule interpreter");
  interpret->add_option("file", file)->required();
  interpret->add_flag("--trace", trace, "print the step log of one run");
  interpret->add_option("--replies", replies, "replies to external actions in the run, e.g. TFT; then T");
  interpret->add_option("--max-steps", max_steps, "step limit of the run");

  std::size_t k = 0;
  auto* decompile = app.add_subcommand("decompile", "PGLD program held by a representation dump");
  decompile->add_option("dump", file, "text or JSON dump, - for stdin")->required();
  decompile->add_option("--k", k, "program length")->required()->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "direct behaviour against interpretation");
  check->add_option("file", file)->required();

  std::size_t count = 100, max_k = 15;
  std::uint64_t seed = 1;
  bool ij = false;
  auto* corpus = app.add_subcommand("corpus", "check a seeded random corpus");
  corpus->add_option("--count", count, "number of programs");
  corpus->add_option("--max-k", max_k, "largest program length")->check(CLI::PositiveNumber);
  corpus->add_option("--seed", seed, "generator seed");
  corpus->add_flag("--ij", ij, "PGLDij programs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitError;
  }

  try {
    if (*project) {
      Program p = load(file, lang);
      pgwb_program* out = nullptr;
      ok(pgwb_project(p.get(), &cfg, &out), "project");
      Program q(out);
      char* text = nullptr;
      ok(pgwb_program_print(q.get(), &text), "print");
      std::cout << Str(text).get() << '\n';
    } else if (*extract) {
      Program p = load(file, lang);
      pgwb_thread* t = nullptr;
      ok(pgwb_behavior(p.get(), &cfg, &t), "extract");
      ThreadPtr th(t);
      char* text = nullptr;
      if (*depth_opt)
        ok(pgwb_thread_project(th.get(), depth, &text), "project");
      else
        ok(pgwb_thread_dump(th.get(), &text), "dump");
      print(Str(text));
    } else if (*represent) {
      Program p = load(file, lang);
      const bool both = only_program == only_state;
      if (only_program || both) {
        char* text = nullptr;
        ok(pgwb_construction_program(p.get(), &cfg, &text), "represent");
        std::cout << Str(text).get() << '\n';
      }
      if (both) std::cout << '\n';
      if (only_state || both) {
        pgwb_mds* m = nullptr;
        ok(pgwb_represent(p.get(), &cfg, &m), "represent");
        Mds mds(m);
        char* text = nullptr;
        ok(pgwb_mds_dump(mds.get(), json ? 1 : 0, &text), "dump");
        print(Str(text));
      }
    } else if (*interpret) {
      Program p = load(file, lang);
      char* text = nullptr;
      if (trace) {
        ok(pgwb_interpret_trace(p.get(), &cfg, replies.c_str(), max_steps, &text), "interpret");
      } else {
        pgwb_thread* t = nullptr;
        ok(pgwb_interpret(p.get(), &cfg, &t), "interpret");
        ThreadPtr th(t);
        ok(pgwb_thread_dump(th.get(), &text), "dump");
      }
      print(Str(text));
    } else if (*decompile) {
      const std::string text = read_input(file);
      pgwb_mds* m = nullptr;
      ok(pgwb_mds_parse(text.c_str(), &m), file);
      Mds mds(m);
      pgwb_program* out = nullptr;
      ok(pgwb_decompile(mds.get(), k, &out), "decompile");
      Program q(out);
      char* printed = nullptr;
      ok(pgwb_program_print(q.get(), &printed), "print");
      std::cout << Str(printed).get() << '\n';
    } else if (*check) {
      Program p = load(file, lang);
      int passed = 0;
      char* report = nullptr;
      ok(pgwb_check(p.get(), &cfg, &passed, &report), "check");
      print(Str(report));
      return passed ? kExitPass : kExitCheckFailed;
    } else if (*corpus) {
      int passed = 0;
      char* summary = nullptr;
      ok(pgwb_corpus(count, max_k, seed, ij ? 1 : 0, &cfg, &passed, &summary), "corpus");
      print(Str(summary));
      return passed ? kExitPass : kExitCheckFailed;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitPass;
}
