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

#ifndef PGWB_H
#define PGWB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PGWB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define PGWB_API __attribute__((visibility("default")))
#else
#define PGWB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgwb_status {
  PGWB_OK = 0,
  PGWB_ERR_PARSE = 1,
  PGWB_ERR_TRANSLATION = 2,
  PGWB_ERR_REPRESENTATION = 3,
  PGWB_ERR_INVALID_ARGUMENT = 4,
  PGWB_ERR_INTERNAL = 5
} pgwb_status;

typedef enum pgwb_lang {
  PGWB_LANG_AUTO = 0, /* parse only: PGLDij if register instructions occur, else PGLD, else PGA */
  PGWB_LANG_PGA = 1,
  PGWB_LANG_PGLD = 2,
  PGWB_LANG_PGLDIJ = 3
} pgwb_lang;

typedef struct pgwb_config {
  uint32_t maxr;     /* registers, >= 1 */
  uint32_t maxn;     /* largest register value, >= 1 */
  uint64_t capacity; /* atom capacity of the representation service; 0 = unbounded */
} pgwb_config;

typedef struct pgwb_program pgwb_program;
typedef struct pgwb_thread pgwb_thread;
typedef struct pgwb_mds pgwb_mds;

/* Defaults: maxr 8, maxn 64, unbounded capacity. */
PGWB_API void pgwb_config_default(pgwb_config* cfg);

/* Message of the last failed call on this thread, "" if none. */
PGWB_API const char* pgwb_last_error(void);
/* Byte offset of the last parse error on this thread, or SIZE_MAX. */
PGWB_API size_t pgwb_last_error_offset(void);

/* Strings returned through char** are owned by the caller. */
PGWB_API void pgwb_string_free(char* s);

PGWB_API pgwb_status pgwb_program_parse(const char* text, pgwb_lang lang, pgwb_program** out);
PGWB_API pgwb_lang pgwb_program_lang(const pgwb_program* p);
/* Number of instructions (prefix plus repeated part for PGA). */
PGWB_API size_t pgwb_program_length(const pgwb_program* p);
PGWB_API pgwb_status pgwb_program_print(const pgwb_program* p, char** out);
PGWB_API void pgwb_program_free(pgwb_program* p);

/* PGLD to PGA, PGLDij to PGLD. The PGLD result uses focus rf and is not
   accepted back by the parser. */
PGWB_API pgwb_status pgwb_project(const pgwb_program* p, const pgwb_config* cfg, pgwb_program** out);

/* Behaviour of a program of any language. */
PGWB_API pgwb_status pgwb_behavior(const pgwb_program* p, const pgwb_config* cfg, pgwb_thread** out);
/* Behaviour of the molecule interpreter on the program's representation.
   PGLD and PGLDij only. */
PGWB_API pgwb_status pgwb_interpret(const pgwb_program* p, const pgwb_config* cfg, pgwb_thread** out);
/* Step log of an interpretation run, one line per step. `replies` holds the
   replies (T/F) given to external actions in turn, then T; may be NULL. */
PGWB_API pgwb_status pgwb_interpret_trace(const pgwb_program* p, const pgwb_config* cfg,
                                          const char* replies, size_t max_steps, char** out);

PGWB_API size_t pgwb_thread_size(const pgwb_thread* t);
/* One line per state: `<id>: S`, `<id>: D` or `<id>: f.m ? <t> : <e>`. */
PGWB_API pgwb_status pgwb_thread_dump(const pgwb_thread* t, char** out);
/* Depth-limited approximation in term notation, e.g. `f.m(S, D)`. */
PGWB_API pgwb_status pgwb_thread_project(const pgwb_thread* t, size_t depth, char** out);
PGWB_API void pgwb_thread_free(pgwb_thread* t);

/* *equal is 1 or 0. If not equal and counterexample is non-NULL, it receives
   the shortest distinguishing path. */
PGWB_API pgwb_status pgwb_equivalent(const pgwb_thread* a, const pgwb_thread* b, int* equal,
                                     char** counterexample);

/* The PGA program constructing the program's representation. */
PGWB_API pgwb_status pgwb_construction_program(const pgwb_program* p, const pgwb_config* cfg, char** out);
PGWB_API pgwb_status pgwb_represent(const pgwb_program* p, const pgwb_config* cfg, pgwb_mds** out);
PGWB_API pgwb_status pgwb_mds_dump(const pgwb_mds* m, int json, char** out);
/* Accepts the text and the JSON dump formats. */
PGWB_API pgwb_status pgwb_mds_parse(const char* text, pgwb_mds** out);
PGWB_API void pgwb_mds_free(pgwb_mds* m);
/* PGLD program of length k held by a representation. */
PGWB_API pgwb_status pgwb_decompile(const pgwb_mds* m, size_t k, pgwb_program** out);

/* Direct behaviour against interpretation (and, for PGLD, the decompilation
   round trip). *passed is 1 or 0; the report names the counterexample. */
PGWB_API pgwb_status pgwb_check(const pgwb_program* p, const pgwb_config* cfg, int* passed, char** report);

/* Seeded random corpus of `count` programs of length <= max_k, checked as by
   pgwb_check. The summary is deterministic. */
PGWB_API pgwb_status pgwb_corpus(size_t count, size_t max_k, uint64_t seed, int registers,
                                 const pgwb_config* cfg, int* passed, char** summary);

#ifdef __cplusplus
}
#endif

#endif
