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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "program.hpp"
#include "value.hpp"

namespace apimorph {

/// Raw result of executing program text: a value or an error message.
struct RunOutcome {
  bool ok = false;
  Value value;
  std::string message;

  static RunOutcome success(Value v) { return {true, std::move(v), {}}; }
  static RunOutcome failure(std::string msg) { return {false, Value{}, std::move(msg)}; }
};

enum class EvalStatus { kPass, kValueMismatch, kError };

const char* to_string(EvalStatus s);

struct EvalResult {
  EvalStatus status = EvalStatus::kError;
  std::optional<Value> observed;
  std::string message;  // set when status == kError
  std::string test_id;  // test that decided the result
};

/// Shape-level description of a reshaping API the runtime offers.
struct ReshapingOp {
  std::string name;
  int arity = 0;                 // integer holes
  bool preserves_shape = false;  // true for dtype casts
};

/// Execution backend. One in-flight call per instance.
class RuntimeAdapter {
 public:
  virtual ~RuntimeAdapter() = default;

  virtual std::string backend_id() const = 0;
  /// Runs `code` (mini call syntax with an `inputs:` header) on `inputs` and
  /// returns the value bound by the last line.
  virtual RunOutcome run(const std::string& code, const std::map<std::string, Value>& inputs) = 0;
  virtual std::vector<ReshapingOp> reshaping_vocabulary() const { return {}; }

  /// Runs and compares against `test.expected_output`.
  virtual EvalResult evaluate(const std::string& code, const TestCase& test);
};

/// Compares an outcome with a test expectation.
EvalResult judge(const RunOutcome& outcome, const TestCase& test);

/// Evaluates `code` on every test, stopping at the first non-pass.
EvalResult evaluate_all(RuntimeAdapter& runtime, const std::string& code,
                        const std::vector<TestCase>& tests);

/// Memoizes evaluate() by (program text, test id). Safe for concurrent use.
class CachingRuntime : public RuntimeAdapter {
 public:
  explicit CachingRuntime(RuntimeAdapter& inner) : inner_(inner) {}

  std::string backend_id() const override { return inner_.backend_id(); }
  RunOutcome run(const std::string& code, const std::map<std::string, Value>& inputs) override;
  std::vector<ReshapingOp> reshaping_vocabulary() const override { return inner_.reshaping_vocabulary(); }
  EvalResult evaluate(const std::string& code, const TestCase& test) override;

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  RuntimeAdapter& inner_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, EvalResult> cache_;
  std::size_t hits_ = 0, misses_ = 0;
  std::mutex run_mu_;
};

/// Per-test values of every variable of a program: the inputs plus what each
/// line bound.
using VariableTrace = std::map<std::string, Value>;

/// Runs each prefix 1..k of `program` on every test. Throws kPrecondition
/// if any prefix errors or the full program disagrees with a test.
std::vector<VariableTrace> trace_program(const Program& program, const std::vector<TestCase>& tests,
                                         RuntimeAdapter& runtime);

/// Line k -> tests whose input is the value line k consumes and whose
/// expectation is the value line k produces.
std::map<int, std::vector<TestCase>> generate_line_tests(const Program& program,
                                                         const std::vector<TestCase>& tests,
                                                         RuntimeAdapter& runtime);

/// Builds `count` tests with seeded random inputs drawn per `spec` and
/// expectations computed by running `program`. Spec per input variable:
///   {"tensor": {"dtype", "shape", "low", "high", "integral"?}} or
///   {"table": {"rows", "columns": [{"name", "type", "low"?, "high"?, "choices"?}]}}
std::vector<TestCase> generate_tests(const Program& program, const Json& spec, int count,
                                     std::uint64_t seed, RuntimeAdapter& runtime);

}  // namespace apimorph
