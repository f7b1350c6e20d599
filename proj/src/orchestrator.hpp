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

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "matching.hpp"
#include "program.hpp"
#include "runtime.hpp"

namespace apimorph {

struct MigrationConfig {
  MatchMode mode = MatchMode::kTfidf;
  std::size_t top_k = 200;
  int max_sketch_size = 2;
  bool use_spec_constraints = true;
  bool use_error_learning = true;
  double global_timeout = 3600.0;  // seconds
  std::uint64_t enumeration_budget = 10000;  // per sketch
  std::uint64_t seed = 0;

  /// Throws kUsage when a field is out of range.
  void validate() const;
};

struct LineOutcome {
  int line_index = 0;
  std::string source;             // the source line as written
  bool migrated = false;
  std::vector<CallSite> snippet;  // target calls when migrated
  std::string target_api;
  int api_rank = 0;               // 1-based position in the ranking
  std::string sketch;
  std::uint64_t candidates_tested = 0;
  std::uint64_t probe_evaluations = 0;
  std::uint64_t learned_constraints = 0;
  std::uint64_t sketches_tried = 0;
  double elapsed_seconds = 0.0;
  std::string failure_reason;

  std::string snippet_text() const;  // calls joined with "; "
};

struct MigrationReport {
  std::vector<LineOutcome> lines;
  bool complete = false;             // every line migrated
  bool tests_passed = false;         // output program passes the whole-program tests
  bool timed_out = false;
  std::uint64_t candidates_tested = 0;
  std::uint64_t probe_evaluations = 0;
  double wall_seconds = 0.0;
  std::string backend;
  MigrationConfig config;
};

struct MigrationResult {
  Program program;  // full migration, or migrated prefix + remaining source lines
  MigrationReport report;
};

/// Everything refactor_line needs besides the line itself.
struct LineContext {
  const DocCorpus& source;
  const DocCorpus& target;
  const SimilarityMatrix& similarity;
  const EmbeddingTable* embeddings = nullptr;
  const MigrationConfig& config;
  RuntimeAdapter& runtime;
  std::chrono::steady_clock::time_point deadline;
};

/// Tries ranked target APIs, their sketches, and the satisfying assignments
/// of each, in that order; the first candidate passing every line test wins.
/// Failed candidates feed error-message learning when enabled.
LineOutcome refactor_line(const CallSite& line, const std::vector<TestCase>& line_tests, const LineContext& ctx);

/// Migrates `program` line by line. Throws kPrecondition when the source
/// program does not pass `tests`. Stops at the first line that cannot be
/// migrated; the result then carries a partial program.
MigrationResult synthesize(const Program& program, const DocCorpus& source, const DocCorpus& target,
                           const std::vector<TestCase>& tests, const MigrationConfig& config,
                           RuntimeAdapter& runtime, const EmbeddingTable* embeddings = nullptr);

}  // namespace apimorph
