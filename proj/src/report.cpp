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

#include "report.hpp"

#include <fstream>

#include "error.hpp"

namespace apimorph {

Json report_to_json(const MigrationReport& report, bool include_timings) {
  const auto& c = report.config;
  Json j;
  j["config"] = {{"mode", to_string(c.mode)},
                 {"top_k", c.top_k},
                 {"max_sketch_size", c.max_sketch_size},
                 {"use_spec_constraints", c.use_spec_constraints},
                 {"use_error_learning", c.use_error_learning},
                 {"global_timeout", c.global_timeout},
                 {"enumeration_budget", c.enumeration_budget},
                 {"seed", c.seed}};
  j["backend"] = report.backend;
  j["complete"] = report.complete;
  j["tests_passed"] = report.tests_passed;
  j["timed_out"] = report.timed_out;
  j["totals"] = {{"lines", report.lines.size()},
                 {"migrated_lines", std::count_if(report.lines.begin(), report.lines.end(),
                                                  [](const LineOutcome& l) { return l.migrated; })},
                 {"candidates_tested", report.candidates_tested},
                 {"probe_evaluations", report.probe_evaluations}};
  if (include_timings) j["totals"]["wall_seconds"] = report.wall_seconds;

  j["lines"] = Json::array();
  for (const auto& l : report.lines) {
    Json e = {{"line", l.line_index + 1},
              {"source", l.source},
              {"status", l.migrated ? "migrated" : "failed"},
              {"candidates_tested", l.candidates_tested},
              {"probe_evaluations", l.probe_evaluations},
              {"learned_constraints", l.learned_constraints},
              {"sketches_tried", l.sketches_tried}};
    if (l.migrated) {
      e["snippet"] = l.snippet_text();
      e["target_api"] = l.target_api;
      e["api_rank"] = l.api_rank;
      e["sketch"] = l.sketch;
    } else {
      e["reason"] = l.failure_reason;
    }
    if (include_timings) e["elapsed_seconds"] = l.elapsed_seconds;
    j["lines"].push_back(std::move(e));
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
}

void write_report(const MigrationReport& report, const std::string& path, bool include_timings) {
  write_text_file(path, report_to_json(report, include_timings).dump(2) + "\n");
}

}  // namespace apimorph
