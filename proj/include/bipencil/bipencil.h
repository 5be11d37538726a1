/*
 * Copyright 2026 The bipencil Authors
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

#ifndef BIPENCIL_H
#define BIPENCIL_H

/* C interface to bipencil. Handles are opaque; every fallible call returns a
 * bp_status and leaves a message retrievable with bp_context_last_error.
 * Strings returned through char** are owned by the caller and released with
 * bp_string_free. Strings returned as const char* stay owned by their handle. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BIPENCIL_BUILDING)
#    define BP_API __declspec(dllexport)
#  else
#    define BP_API __declspec(dllimport)
#  endif
#else
#  define BP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bp_status {
    BP_OK = 0,
    BP_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
    BP_ERR_FORMAT = 2,           /* malformed JSON, bad document, unknown name */
    BP_ERR_STRUCTURAL = 3,       /* shape mismatch */
    BP_ERR_DOMAIN = 4,           /* precondition of the operation violated */
    BP_ERR_CONSISTENCY = 5,      /* internal cross-check disagreed */
    BP_ERR_INTERNAL = 6
} bp_status;

/* Process exit codes carried by reports. */
enum {
    BP_EXIT_PASS = 0,
    BP_EXIT_FAIL = 1,
    BP_EXIT_USAGE = 2,
    BP_EXIT_INCONCLUSIVE = 3
};

typedef struct bp_context bp_context;
typedef struct bp_pencil bp_pencil;
typedef struct bp_report bp_report;

BP_API const char* bp_version(void);
BP_API void bp_string_free(char* s);

BP_API bp_status bp_context_create(bp_context** out);
BP_API void bp_context_destroy(bp_context* ctx);
/* Seed for randomized sampling in commands that do not override it. */
BP_API bp_status bp_context_set_seed(bp_context* ctx, uint64_t seed);
/* Worker threads; 0 selects the hardware concurrency. */
BP_API bp_status bp_context_set_threads(bp_context* ctx, unsigned threads);
BP_API const char* bp_context_last_error(const bp_context* ctx);

BP_API bp_status bp_pencil_from_json(bp_context* ctx, const char* json, bp_pencil** out);
BP_API bp_status bp_pencil_from_corpus(bp_context* ctx, const char* name, bp_pencil** out);
BP_API bp_status bp_pencil_to_json(bp_context* ctx, const bp_pencil* p, char** out);
BP_API bp_status bp_pencil_dimension(const bp_pencil* p, size_t* out);
/* Rank and characteristic polynomial need a constant pencil. */
BP_API bp_status bp_pencil_rank(bp_context* ctx, const bp_pencil* p, size_t* out);
BP_API bp_status bp_pencil_charpoly(bp_context* ctx, const bp_pencil* p, char** out);
BP_API void bp_pencil_destroy(bp_pencil* p);

/* Runs one subcommand on a JSON request. On BP_OK *out holds a report whose
 * exit code tells pass, fail or inconclusive. */
BP_API bp_status bp_run(bp_context* ctx, const char* command, const char* request_json, bp_report** out);
BP_API const char* bp_report_json(const bp_report* r);
BP_API const char* bp_report_text(const bp_report* r);
BP_API int bp_report_exit_code(const bp_report* r);
BP_API void bp_report_destroy(bp_report* r);

/* Newline-separated subcommand names. */
BP_API bp_status bp_command_list(bp_context* ctx, char** out);
BP_API bp_status bp_corpus_manifest(bp_context* ctx, char** out);
BP_API bp_status bp_corpus_document(bp_context* ctx, const char* name, char** out);

#ifdef __cplusplus
}
#endif

#endif /* BIPENCIL_H */
