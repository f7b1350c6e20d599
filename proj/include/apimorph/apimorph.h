// Copyright 2026 The Apimorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef APIMORPH_APIMORPH_H_
#define APIMORPH_APIMORPH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define APIMORPH_API __declspec(dllexport)
#else
#define APIMORPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apimorph_status {
  APIMORPH_OK = 0,
  APIMORPH_E_IO = 1,
  APIMORPH_E_SCHEMA = 2,
  APIMORPH_E_VALIDATION = 3,
  APIMORPH_E_RESOLUTION = 4,
  APIMORPH_E_SCOPING = 5,
  APIMORPH_E_CONSISTENCY = 6,
  APIMORPH_E_LOOKUP = 7,
  APIMORPH_E_PRECONDITION = 8,
  APIMORPH_E_RUNTIME = 9,
  APIMORPH_E_USAGE = 10,
  APIMORPH_E_INTERNAL = 11,
  /* Not an error: some line could not be migrated. */
  APIMORPH_MIGRATION_PARTIAL = 12
} apimorph_status;

/* Holds corpora, program, tests, runtime, options and the last result.
   A session must not be used from two threads at once. */
typedef struct apimorph_session apimorph_session;

APIMORPH_API const char* apimorph_version(void);
APIMORPH_API const char* apimorph_status_string(apimorph_status status);

APIMORPH_API apimorph_status apimorph_session_create(apimorph_session** out);
APIMORPH_API void apimorph_session_destroy(apimorph_session* session);

/* Message of the last failed call on this session; "" when none. Valid until
   the next call on the session. */
APIMORPH_API const char* apimorph_last_error(const apimorph_session* session);

APIMORPH_API apimorph_status apimorph_load_source_docs(apimorph_session* session, const char* path);
APIMORPH_API apimorph_status apimorph_load_target_docs(apimorph_session* session, const char* path);
APIMORPH_API apimorph_status apimorph_load_embeddings(apimorph_session* session, const char* path);

/* Programs resolve against the source docs, which must be loaded first. */
APIMORPH_API apimorph_status apimorph_load_program(apimorph_session* session, const char* path);
APIMORPH_API apimorph_status apimorph_set_program_text(apimorph_session* session, const char* text);
APIMORPH_API apimorph_status apimorph_load_tests(apimorph_session* session, const char* path);

/* Keys: mode (tfidf | tfidf-embedding), top_k, max_sketch_size,
   spec_constraints (0/1), error_learning (0/1), timeout (seconds),
   budget, seed. */
APIMORPH_API apimorph_status apimorph_set_option(apimorph_session* session, const char* key, const char* value);

/* The in-process runtime is the default. */
APIMORPH_API apimorph_status apimorph_use_mock_runtime(apimorph_session* session);
/* Spawns `command` through /bin/sh and performs the handshake. */
APIMORPH_API apimorph_status apimorph_use_external_runtime(apimorph_session* session, const char* command,
                                                           int64_t timeout_ms);

/* Returns APIMORPH_OK on a full migration that passes every test,
   APIMORPH_MIGRATION_PARTIAL otherwise. */
APIMORPH_API apimorph_status apimorph_migrate(apimorph_session* session);

/* Strings stay valid until the next migrate or destroy. */
APIMORPH_API apimorph_status apimorph_output_program(apimorph_session* session, const char** text);
APIMORPH_API apimorph_status apimorph_report_json(apimorph_session* session, int include_timings, const char** json);
APIMORPH_API apimorph_status apimorph_write_report(apimorph_session* session, const char* path, int include_timings);

/* Runs the loaded program on `count` random inputs drawn per the JSON spec
   in `spec_path` and writes a tests file to `out_path`. */
APIMORPH_API apimorph_status apimorph_generate_tests(apimorph_session* session, const char* spec_path, int count,
                                                     uint64_t seed, const char* out_path);

/* Hyponym type 1..4 of `message`, 0 when none. The captured words are copied
   into `capture` (NUL-terminated, truncated to capture_len) when given. */
APIMORPH_API int apimorph_classify_message(const char* message, char* capture, size_t capture_len);

#ifdef __cplusplus
}
#endif

#endif  // APIMORPH_APIMORPH_H_
