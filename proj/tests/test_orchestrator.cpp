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

#include <doctest.h>

#include "error.hpp"
#include "mock_library.hpp"
#include "orchestrator.hpp"
#include "report.hpp"

using namespace apimorph;

namespace {

const std::string kMock = std::string(APIMORPH_DATA_DIR) + "/mock";

struct Fixture {
  DocCorpus flow = load_corpus(kMock + "/flow.json");
  DocCorpus torch = load_corpus(kMock + "/torchlet.json");
  MockRuntime rt;

  MigrationResult migrate(const std::string& dir, MigrationConfig cfg = {}) {
    auto prog = load_program(kMock + "/" + dir + "/program.src", flow);
    auto tests = load_tests(kMock + "/" + dir + "/tests.json");
    return synthesize(prog, flow, torch, tests, cfg, rt);
  }
};

}  // namespace

TEST_CASE("an empty program migrates to an empty program") {
  Fixture f;
  auto prog = parse_program("inputs: x\n", f.flow);
  Tensor x{DType::kFloat, {1}, {1.0}};
  auto r = synthesize(prog, f.flow, f.torch, {TestCase{"t", {{"x", Value{x}}}, Value{x}, -1}}, {}, f.rt);
  CHECK(r.program.lines.empty());
  CHECK(r.report.complete);
  CHECK(r.report.tests_passed);
  CHECK(r.report.candidates_tested == 0);
}

TEST_CASE("source programs must pass their own tests") {
  Fixture f;
  auto prog = load_program(kMock + "/01_affine/program.src", f.flow);
  auto tests = load_tests(kMock + "/01_affine/tests.json");
  tests[0].expected_output = tests[1].expected_output;
  try {
    synthesize(prog, f.flow, f.torch, tests, {}, f.rt);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPrecondition);
  }
}

TEST_CASE("invalid configurations are usage errors") {
  MigrationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (auto mutate : std::vector<void (*)(MigrationConfig&)>{
           [](MigrationConfig& c) { c.top_k = 0; }, [](MigrationConfig& c) { c.max_sketch_size = 0; },
           [](MigrationConfig& c) { c.global_timeout = 0; }, [](MigrationConfig& c) { c.enumeration_budget = 0; }}) {
    MigrationConfig c;
    mutate(c);
    try {
      c.validate();
      FAIL("expected a usage error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUsage);
    }
  }
}

TEST_CASE("a benchmark migrates completely") {
  Fixture f;
  auto r = f.migrate("02_conv_relu");
  REQUIRE(r.report.complete);
  CHECK(r.report.tests_passed);
  REQUIRE(r.report.lines.size() == 4);
  CHECK(r.report.lines[0].target_api == "torchlet.nn.Conv2d");
  CHECK(r.report.lines[1].snippet_text() == "r1 = torchlet.nn.ReLU()");
  CHECK(r.report.lines[0].sketch.find("permute") == std::string::npos);
  std::uint64_t sum = 0;
  for (const auto& l : r.report.lines) {
    CHECK(l.migrated);
    CHECK(l.api_rank >= 1);
    sum += l.candidates_tested;
  }
  CHECK(sum == r.report.candidates_tested);
  CHECK(r.report.backend == "mock");
  // The migrated program is itself a passing program over the target library.
  CHECK_NOTHROW(trace_program(r.program, load_tests(kMock + "/02_conv_relu/tests.json"), f.rt));
}

TEST_CASE("layout-changing lines need a permute") {
  Fixture f;
  auto r = f.migrate("03_gap_dense");
  REQUIRE(r.report.complete);
  CHECK(r.report.lines[0].sketch.rfind("torchlet.Tensor.permute", 0) == 0);
  CHECK(r.report.lines[0].snippet.size() == 2);
  CHECK(r.program.lines.size() == 4);

  MigrationConfig single;
  single.max_sketch_size = 1;
  auto s = f.migrate("03_gap_dense", single);
  CHECK_FALSE(s.report.complete);
  CHECK_FALSE(s.report.lines[0].migrated);
  CHECK_FALSE(s.report.lines[0].failure_reason.empty());
}

TEST_CASE("a callee outside the top-k is not found") {
  Fixture f;
  MigrationConfig cfg;
  cfg.top_k = 2;
  auto r = f.migrate("07_table_filter", cfg);
  CHECK_FALSE(r.report.complete);
  REQUIRE(r.report.lines.size() == 3);
  CHECK_FALSE(r.report.lines[0].migrated);
  // Unmigrated lines stay as source lines in the partial program.
  CHECK(r.program.lines.size() == 3);
  CHECK(r.program.lines[0].callee == "flow.frame.filter_rows");
  auto src = load_program(kMock + "/07_table_filter/program.src", f.flow);
  CHECK(r.program.to_text() == src.to_text());
}

TEST_CASE("error learning never increases the candidates tested") {
  Fixture f;
  for (std::string dir : {"01_affine", "02_conv_relu", "06_onehot", "10_deep", "scenarios/spec_ablation",
                          "scenarios/error_learning"}) {
    for (bool specs : {true, false}) {
      MigrationConfig on, off;
      on.use_spec_constraints = off.use_spec_constraints = specs;
      off.use_error_learning = false;
      auto a = f.migrate(dir, on);
      auto b = f.migrate(dir, off);
      CAPTURE(dir);
      CAPTURE(specs);
      if (specs) CHECK(a.report.complete);
      CHECK(a.report.candidates_tested <= b.report.candidates_tested);
      for (const auto& l : b.report.lines) CHECK(l.learned_constraints == 0);
    }
  }
}

TEST_CASE("repeated migrations are identical") {
  Fixture f;
  auto a = f.migrate("10_deep");
  auto b = f.migrate("10_deep");
  CHECK(a.program.to_text() == b.program.to_text());
  CHECK(report_to_json(a.report, false).dump() == report_to_json(b.report, false).dump());
  CHECK(report_to_json(a.report, false).dump().find("elapsed") == std::string::npos);
}

TEST_CASE("an exhausted global timeout stops the run") {
  Fixture f;
  MigrationConfig cfg;
  cfg.global_timeout = 1e-9;
  auto r = f.migrate("10_deep", cfg);
  CHECK(r.report.timed_out);
  CHECK_FALSE(r.report.complete);
}
