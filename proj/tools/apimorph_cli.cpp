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

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "apimorph/apimorph.h"

namespace {

using Session = std::unique_ptr<apimorph_session, decltype(&apimorph_session_destroy)>;

Session new_session() {
  apimorph_session* s = nullptr;
  if (apimorph_session_create(&s) != APIMORPH_OK) return {nullptr, apimorph_session_destroy};
  return {s, apimorph_session_destroy};
}

// Prints the failure and reports whether `st` was OK.
bool ok(apimorph_session* s, apimorph_status st, const std::string& what) {
  if (st == APIMORPH_OK) return true;
  std::cerr << "apimorph: " << what << ": " << apimorph_status_string(st);
  const char* detail = apimorph_last_error(s);
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  return false;
}

struct MigrateArgs {
  std::string source_docs, target_docs, program, tests, embeddings, adapter;
  std::string mode = "tfidf";
  std::string output_dir = ".";
  std::size_t top_k = 200;
  int max_sketch_size = 2;
  bool no_spec = false, no_learning = false, mock = false, no_timings = false;
  double timeout = 3600;
  std::uint64_t budget = 10000, seed = 0;
  std::int64_t adapter_timeout_ms = 10000;
};

struct GenArgs {
  std::string source_docs, program, inputs, out, adapter;
  int count = 5;
  std::uint64_t seed = 0;
  bool mock = false;
  std::int64_t adapter_timeout_ms = 10000;
};

bool select_runtime(apimorph_session* s, const std::string& adapter, std::int64_t timeout_ms) {
  if (adapter.empty()) return ok(s, apimorph_use_mock_runtime(s), "runtime");
  return ok(s, apimorph_use_external_runtime(s, adapter.c_str(), timeout_ms), "adapter");
}

int run_migrate(const MigrateArgs& a) {
  Session s = new_session();
  if (!s) return 1;
  apimorph_session* p = s.get();
  if (!ok(p, apimorph_load_source_docs(p, a.source_docs.c_str()), "source docs") ||
      !ok(p, apimorph_load_target_docs(p, a.target_docs.c_str()), "target docs") ||
      !ok(p, apimorph_load_program(p, a.program.c_str()), "program") ||
      !ok(p, apimorph_load_tests(p, a.tests.c_str()), "tests"))
    return 1;
  if (!a.embeddings.empty() && !ok(p, apimorph_load_embeddings(p, a.embeddings.c_str()), "embeddings")) return 1;

  const std::pair<const char*, std::string> options[] = {
      {"mode", a.mode},
      {"top_k", std::to_string(a.top_k)},
      {"max_sketch_size", std::to_string(a.max_sketch_size)},
      {"spec_constraints", a.no_spec ? "0" : "1"},
      {"error_learning", a.no_learning ? "0" : "1"},
      {"timeout", std::to_string(a.timeout)},
      {"budget", std::to_string(a.budget)},
      {"seed", std::to_string(a.seed)},
  };
  for (const auto& [key, value] : options)
    if (!ok(p, apimorph_set_option(p, key, value.c_str()), std::string("option ") + key)) return 1;
  if (!select_runtime(p, a.adapter, a.adapter_timeout_ms)) return 1;

  apimorph_status st = apimorph_migrate(p);
  if (st != APIMORPH_OK && st != APIMORPH_MIGRATION_PARTIAL) {
    ok(p, st, "migrate");
    return 1;
  }

  std::error_code ec;
  std::filesystem::create_directories(a.output_dir, ec);
  const std::string program_path = (std::filesystem::path(a.output_dir) / "migrated.src").string();
  const std::string report_path = (std::filesystem::path(a.output_dir) / "report.json").string();
  const char* text = nullptr;
  if (!ok(p, apimorph_output_program(p, &text), "output")) return 1;
  std::FILE* f = std::fopen(program_path.c_str(), "wb");
  if (!f || std::fputs(text, f) < 0 || std::fclose(f) != 0) {
    std::cerr << "apimorph: cannot write '" << program_path << "'\n";
    return 1;
  }
  if (!ok(p, apimorph_write_report(p, report_path.c_str(), a.no_timings ? 0 : 1), "report")) return 1;

  std::cout << (st == APIMORPH_OK ? "migrated" : "partial") << ": " << program_path << "\n";
  return st == APIMORPH_OK ? 0 : 2;
}

int run_gen_tests(const GenArgs& a) {
  Session s = new_session();
  if (!s) return 1;
  apimorph_session* p = s.get();
  if (!ok(p, apimorph_load_source_docs(p, a.source_docs.c_str()), "source docs") ||
      !ok(p, apimorph_load_program(p, a.program.c_str()), "program") ||
      !select_runtime(p, a.adapter, a.adapter_timeout_ms) ||
      !ok(p, apimorph_generate_tests(p, a.inputs.c_str(), a.count, a.seed, a.out.c_str()), "gen-tests"))
    return 1;
  std::cout << "wrote " << a.count << " tests: " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test-driven API migration between documented libraries"};
  app.set_version_flag("--version", std::string(apimorph_version()));
  app.require_subcommand(1);

  MigrateArgs m;
  auto* migrate = app.add_subcommand("migrate", "Migrate a program to the target library");
  migrate->add_option("--source-docs", m.source_docs, "Source library documentation (JSON)")->required();
  migrate->add_option("--target-docs", m.target_docs, "Target library documentation (JSON)")->required();
  migrate->add_option("--program", m.program, "Source program")->required();
  migrate->add_option("--tests", m.tests, "Whole-program tests (JSON)")->required();
  migrate->add_option("--mode", m.mode, "Matching mode")
      ->check(CLI::IsMember({"tfidf", "tfidf-embedding"}))
      ->capture_default_str();
  migrate->add_option("--embeddings", m.embeddings, "Word vectors (text format)");
  migrate->add_option("--top-k", m.top_k, "Ranked target APIs tried per line")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  migrate->add_option("--max-sketch-size", m.max_sketch_size, "Calls per sketch, reshaping ops included")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  migrate->add_flag("--no-spec-constraints", m.no_spec, "Ignore documented relations and enum values");
  migrate->add_flag("--no-error-learning", m.no_learning, "Do not learn constraints from error messages");
  migrate->add_option("--timeout", m.timeout, "Global time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  migrate->add_option("--budget", m.budget, "Enumerated assignments per sketch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  migrate->add_option("--seed", m.seed, "Seed recorded in the report")->capture_default_str();
  auto* adapter = migrate->add_option("--adapter", m.adapter, "Command running an external adapter");
  auto* mock = migrate->add_flag("--mock", m.mock, "Use the in-process runtime (default)");
  adapter->excludes(mock);
  migrate->add_option("--adapter-timeout-ms", m.adapter_timeout_ms, "Per-request adapter timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  migrate->add_option("--output-dir", m.output_dir, "Where migrated.src and report.json go")->capture_default_str();
  migrate->add_flag("--no-timings", m.no_timings, "Leave wall-clock times out of the report");

  GenArgs g;
  auto* gen = app.add_subcommand("gen-tests", "Generate whole-program tests from random inputs");
  gen->add_option("--source-docs", g.source_docs, "Source library documentation (JSON)")->required();
  gen->add_option("--program", g.program, "Source program")->required();
  gen->add_option("--inputs", g.inputs, "Input specification (JSON)")->required();
  gen->add_option("--out", g.out, "Tests file to write")->required();
  gen->add_option("--count", g.count, "Number of tests")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", g.seed, "Random seed")->capture_default_str();
  auto* gadapter = gen->add_option("--adapter", g.adapter, "Command running an external adapter");
  gen->add_flag("--mock", g.mock, "Use the in-process runtime (default)")->excludes(gadapter);
  gen->add_option("--adapter-timeout-ms", g.adapter_timeout_ms, "Per-request adapter timeout")
      ->check(CLI::PositiveNumber);

  std::string message;
  auto* cls = app.add_subcommand("classify", "Classify an error message into a hyponym type");
  cls->add_option("message", message, "Error message text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*migrate) return run_migrate(m);
  if (*gen) return run_gen_tests(g);
  char capture[256];
  int type = apimorph_classify_message(message.c_str(), capture, sizeof capture);
  if (type == 0)
    std::cout << "none\n";
  else
    std::cout << "type " << type << ": " << capture << "\n";
  return 0;
}
