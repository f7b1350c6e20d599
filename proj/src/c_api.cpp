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

#include "apimorph/apimorph.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <optional>

#include "errmsg.hpp"
#include "error.hpp"
#include "external_runtime.hpp"
#include "mock_library.hpp"
#include "orchestrator.hpp"
#include "report.hpp"
#include "version.hpp"

using namespace apimorph;

struct apimorph_session {
  std::optional<DocCorpus> source;
  std::optional<DocCorpus> target;
  std::optional<EmbeddingTable> embeddings;
  std::optional<Program> program;
  std::vector<TestCase> tests;
  bool tests_loaded = false;
  MigrationConfig config;
  std::unique_ptr<RuntimeAdapter> runtime = std::make_unique<MockRuntime>();
  std::optional<MigrationResult> result;
  std::string output_text;
  std::string report_text;
  std::string last_error;
};

namespace {

apimorph_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::kIo: return APIMORPH_E_IO;
    case ErrorKind::kSchema: return APIMORPH_E_SCHEMA;
    case ErrorKind::kValidation: return APIMORPH_E_VALIDATION;
    case ErrorKind::kResolution: return APIMORPH_E_RESOLUTION;
    case ErrorKind::kScoping: return APIMORPH_E_SCOPING;
    case ErrorKind::kConsistency: return APIMORPH_E_CONSISTENCY;
    case ErrorKind::kLookup: return APIMORPH_E_LOOKUP;
    case ErrorKind::kPrecondition: return APIMORPH_E_PRECONDITION;
    case ErrorKind::kRuntime: return APIMORPH_E_RUNTIME;
    case ErrorKind::kUsage: return APIMORPH_E_USAGE;
  }
  return APIMORPH_E_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the session error.
template <typename F>
apimorph_status guarded(apimorph_session* s, F&& body) {
  if (!s) return APIMORPH_E_USAGE;
  s->last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    s->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return APIMORPH_E_INTERNAL;
  }
}

void require(bool cond, ErrorKind kind, const char* message) {
  if (!cond) throw Error(kind, message);
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    auto x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kUsage, "option '" + key + "' needs a non-negative integer, got '" + v + "'");
  }
}

bool parse_flag(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw Error(ErrorKind::kUsage, "option '" + key + "' needs 0 or 1, got '" + v + "'");
}

}  // namespace

extern "C" {

const char* apimorph_version(void) { return kVersion; }

const char* apimorph_status_string(apimorph_status status) {
  switch (status) {
    case APIMORPH_OK: return "ok";
    case APIMORPH_E_IO: return "i/o error";
    case APIMORPH_E_SCHEMA: return "schema error";
    case APIMORPH_E_VALIDATION: return "validation error";
    case APIMORPH_E_RESOLUTION: return "resolution error";
    case APIMORPH_E_SCOPING: return "scoping error";
    case APIMORPH_E_CONSISTENCY: return "consistency error";
    case APIMORPH_E_LOOKUP: return "lookup error";
    case APIMORPH_E_PRECONDITION: return "precondition error";
    case APIMORPH_E_RUNTIME: return "runtime error";
    case APIMORPH_E_USAGE: return "usage error";
    case APIMORPH_E_INTERNAL: return "internal error";
    case APIMORPH_MIGRATION_PARTIAL: return "partial migration";
  }
  return "unknown status";
}

apimorph_status apimorph_session_create(apimorph_session** out) {
  if (!out) return APIMORPH_E_USAGE;
  try {
    *out = new apimorph_session();
  } catch (const std::exception&) {
    *out = nullptr;
    return APIMORPH_E_INTERNAL;
  }
  return APIMORPH_OK;
}

void apimorph_session_destroy(apimorph_session* session) { delete session; }

const char* apimorph_last_error(const apimorph_session* session) {
  return session ? session->last_error.c_str() : "no session";
}

apimorph_status apimorph_load_source_docs(apimorph_session* s, const char* path) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    DocCorpus c = load_corpus(path);
    validate_corpus(c);
    s->source = std::move(c);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_load_target_docs(apimorph_session* s, const char* path) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    DocCorpus c = load_corpus(path);
    validate_corpus(c);
    s->target = std::move(c);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_load_embeddings(apimorph_session* s, const char* path) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    s->embeddings = load_embeddings(path);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_load_program(apimorph_session* s, const char* path) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    require(s->source.has_value(), ErrorKind::kUsage, "load the source docs before the program");
    s->program = load_program(path, *s->source);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_set_program_text(apimorph_session* s, const char* text) {
  return guarded(s, [&] {
    require(text, ErrorKind::kUsage, "text is null");
    require(s->source.has_value(), ErrorKind::kUsage, "load the source docs before the program");
    s->program = parse_program(text, *s->source);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_load_tests(apimorph_session* s, const char* path) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    s->tests = load_tests(path);
    s->tests_loaded = true;
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_set_option(apimorph_session* s, const char* key_c, const char* value_c) {
  return guarded(s, [&] {
    require(key_c && value_c, ErrorKind::kUsage, "option key or value is null");
    const std::string key = key_c, v = value_c;
    MigrationConfig c = s->config;
    if (key == "mode") {
      c.mode = parse_match_mode(v);
    } else if (key == "top_k") {
      c.top_k = parse_unsigned(key, v);
    } else if (key == "max_sketch_size") {
      c.max_sketch_size = static_cast<int>(parse_unsigned(key, v));
    } else if (key == "spec_constraints") {
      c.use_spec_constraints = parse_flag(key, v);
    } else if (key == "error_learning") {
      c.use_error_learning = parse_flag(key, v);
    } else if (key == "timeout") {
      try {
        c.global_timeout = std::stod(v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kUsage, "option 'timeout' needs a number, got '" + v + "'");
      }
    } else if (key == "budget") {
      c.enumeration_budget = parse_unsigned(key, v);
    } else if (key == "seed") {
      c.seed = parse_unsigned(key, v);
    } else {
      throw Error(ErrorKind::kUsage, "unknown option '" + key + "'");
    }
    c.validate();
    s->config = c;
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_use_mock_runtime(apimorph_session* s) {
  return guarded(s, [&] {
    s->runtime = std::make_unique<MockRuntime>();
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_use_external_runtime(apimorph_session* s, const char* command, int64_t timeout_ms) {
  return guarded(s, [&] {
    require(command, ErrorKind::kUsage, "command is null");
    require(timeout_ms > 0, ErrorKind::kUsage, "timeout must be positive");
    std::vector<std::string> libs;
    if (s->source) libs.push_back(s->source->library_id);
    if (s->target) libs.push_back(s->target->library_id);
    auto ext = std::make_unique<ExternalRuntime>(command, libs, std::chrono::milliseconds(timeout_ms));
    // The mock pair's reshaping ops are the ones the adapter hosts.
    ext->set_reshaping_vocabulary(MockRuntime().reshaping_vocabulary());
    s->runtime = std::move(ext);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_migrate(apimorph_session* s) {
  return guarded(s, [&] {
    require(s->source && s->target, ErrorKind::kUsage, "both doc corpora must be loaded");
    require(s->program.has_value(), ErrorKind::kUsage, "no program loaded");
    require(s->tests_loaded, ErrorKind::kUsage, "no tests loaded");
    s->result.reset();
    s->output_text.clear();
    s->report_text.clear();
    s->result = synthesize(*s->program, *s->source, *s->target, s->tests, s->config, *s->runtime,
                           s->embeddings ? &*s->embeddings : nullptr);
    s->output_text = s->result->program.to_text();
    const auto& r = s->result->report;
    return r.complete && r.tests_passed ? APIMORPH_OK : APIMORPH_MIGRATION_PARTIAL;
  });
}

apimorph_status apimorph_output_program(apimorph_session* s, const char** text) {
  return guarded(s, [&] {
    require(text, ErrorKind::kUsage, "output pointer is null");
    require(s->result.has_value(), ErrorKind::kUsage, "no migration has run");
    *text = s->output_text.c_str();
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_report_json(apimorph_session* s, int include_timings, const char** json) {
  return guarded(s, [&] {
    require(json, ErrorKind::kUsage, "output pointer is null");
    require(s->result.has_value(), ErrorKind::kUsage, "no migration has run");
    s->report_text = report_to_json(s->result->report, include_timings != 0).dump(2) + "\n";
    *json = s->report_text.c_str();
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_write_report(apimorph_session* s, const char* path, int include_timings) {
  return guarded(s, [&] {
    require(path, ErrorKind::kUsage, "path is null");
    require(s->result.has_value(), ErrorKind::kUsage, "no migration has run");
    write_report(s->result->report, path, include_timings != 0);
    return APIMORPH_OK;
  });
}

apimorph_status apimorph_generate_tests(apimorph_session* s, const char* spec_path, int count, uint64_t seed,
                                        const char* out_path) {
  return guarded(s, [&] {
    require(spec_path && out_path, ErrorKind::kUsage, "path is null");
    require(count > 0, ErrorKind::kUsage, "count must be positive");
    require(s->program.has_value(), ErrorKind::kUsage, "no program loaded");
    std::ifstream in(spec_path);
    if (!in) throw Error(ErrorKind::kIo, std::string("cannot open '") + spec_path + "'");
    Json spec;
    try {
      spec = Json::parse(in);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::kSchema, std::string(spec_path) + ": " + e.what());
    }
    auto tests = generate_tests(*s->program, spec, count, seed, *s->runtime);
    write_text_file(out_path, tests_to_json(tests).dump(2) + "\n");
    return APIMORPH_OK;
  });
}

int apimorph_classify_message(const char* message, char* capture, size_t capture_len) {
  if (capture && capture_len) capture[0] = '\0';
  if (!message) return 0;
  try {
    auto m = classify(message);
    if (!m) return 0;
    if (capture && capture_len) {
      std::size_t n = std::min(capture_len - 1, m->capture.size());
      std::memcpy(capture, m->capture.data(), n);
      capture[n] = '\0';
    }
    return m->type;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // extern "C"
