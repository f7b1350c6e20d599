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

#include "runtime.hpp"

#include <cmath>
#include <random>

#include "error.hpp"

namespace apimorph {

const char* to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::kPass: return "pass";
    case EvalStatus::kValueMismatch: return "value_mismatch";
    case EvalStatus::kError: return "error";
  }
  return "error";
}

EvalResult judge(const RunOutcome& outcome, const TestCase& test) {
  EvalResult r;
  r.test_id = test.id;
  if (!outcome.ok) {
    r.status = EvalStatus::kError;
    r.message = outcome.message.empty() ? "unknown runtime error" : outcome.message;
    return r;
  }
  r.observed = outcome.value;
  r.status = values_equal(outcome.value, test.expected_output) ? EvalStatus::kPass
                                                               : EvalStatus::kValueMismatch;
  return r;
}

EvalResult RuntimeAdapter::evaluate(const std::string& code, const TestCase& test) {
  return judge(run(code, test.inputs), test);
}

EvalResult evaluate_all(RuntimeAdapter& runtime, const std::string& code,
                        const std::vector<TestCase>& tests) {
  EvalResult last;
  last.status = EvalStatus::kPass;
  for (const auto& t : tests) {
    last = runtime.evaluate(code, t);
    if (last.status != EvalStatus::kPass) return last;
  }
  return last;
}

RunOutcome CachingRuntime::run(const std::string& code, const std::map<std::string, Value>& inputs) {
  std::lock_guard<std::mutex> lock(run_mu_);
  return inner_.run(code, inputs);
}

EvalResult CachingRuntime::evaluate(const std::string& code, const TestCase& test) {
  std::string key = test.id + '\x1f' + code;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
  }
  EvalResult r;
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    r = inner_.evaluate(code, test);
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::move(key), r);
  return r;
}

std::size_t CachingRuntime::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t CachingRuntime::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

std::vector<VariableTrace> trace_program(const Program& program, const std::vector<TestCase>& tests,
                                         RuntimeAdapter& runtime) {
  std::vector<VariableTrace> traces;
  for (const auto& t : tests) {
    for (const auto& v : program.input_vars) {
      if (!t.inputs.count(v))
        throw Error(ErrorKind::kPrecondition, "test " + t.id + " has no value for input '" + v + "'");
    }
    VariableTrace trace = t.inputs;
    for (std::size_t k = 0; k < program.lines.size(); ++k) {
      RunOutcome out = runtime.run(program.prefix(k + 1).to_text(), t.inputs);
      if (!out.ok)
        throw Error(ErrorKind::kPrecondition, "source program fails on test " + t.id + " at line " +
                                                  std::to_string(k + 1) + ": " + out.message);
      trace[program.lines[k].binds] = out.value;
    }
    const Value& final_value =
        program.lines.empty() ? t.inputs.at(program.input_vars.front()) : trace[program.lines.back().binds];
    if (!values_equal(final_value, t.expected_output))
      throw Error(ErrorKind::kPrecondition, "source program does not reproduce the expected output of test " +
                                                t.id + " (got " + value_summary(final_value) + ")");
    traces.push_back(std::move(trace));
  }
  return traces;
}

std::map<int, std::vector<TestCase>> generate_line_tests(const Program& program,
                                                         const std::vector<TestCase>& tests,
                                                         RuntimeAdapter& runtime) {
  auto traces = trace_program(program, tests, runtime);
  std::map<int, std::vector<TestCase>> out;
  for (const auto& line : program.lines) {
    auto& bucket = out[line.line_index];
    for (std::size_t i = 0; i < tests.size(); ++i) {
      TestCase lt;
      lt.id = tests[i].id + "@" + std::to_string(line.line_index);
      lt.inputs.emplace(line.data_input, traces[i].at(line.data_input));
      lt.expected_output = traces[i].at(line.binds);
      lt.line_scope = line.line_index;
      bucket.push_back(std::move(lt));
    }
  }
  return out;
}

namespace {

// Platform-independent uniform draw in [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double draw(std::mt19937_64& rng, double low, double high, bool integral) {
  if (integral) {
    auto lo = static_cast<std::int64_t>(std::ceil(low));
    auto hi = static_cast<std::int64_t>(std::floor(high));
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return static_cast<double>(lo + static_cast<std::int64_t>(rng() % span));
  }
  double v = low + (high - low) * unit(rng);
  return std::round(v * 1000.0) / 1000.0;
}

Value random_value(const Json& spec, std::mt19937_64& rng) {
  if (spec.contains("tensor")) {
    const auto& s = spec.at("tensor");
    Tensor t;
    t.dtype = s.value("dtype", "float") == "int" ? DType::kInt : DType::kFloat;
    t.shape = s.at("shape").get<std::vector<std::int64_t>>();
    bool integral = s.value("integral", false) || t.dtype == DType::kInt;
    double lo = s.value("low", -1.0), hi = s.value("high", 1.0);
    for (std::int64_t i = 0; i < t.element_count(); ++i) t.data.push_back(draw(rng, lo, hi, integral));
    return t;
  }
  if (spec.contains("table")) {
    const auto& s = spec.at("table");
    int rows = s.at("rows").get<int>();
    Table tab;
    for (const auto& cj : s.at("columns")) {
      Column c;
      c.name = cj.at("name").get<std::string>();
      std::string type = cj.value("type", "float");
      c.type = type == "int" ? ColumnType::kInt : type == "string" ? ColumnType::kString : ColumnType::kFloat;
      for (int r = 0; r < rows; ++r) {
        if (c.type == ColumnType::kString) {
          auto choices = cj.at("choices").get<std::vector<std::string>>();
          c.strings.push_back(choices[rng() % choices.size()]);
        } else {
          c.numbers.push_back(draw(rng, cj.value("low", 0.0), cj.value("high", 10.0), c.type == ColumnType::kInt));
        }
      }
      tab.columns.push_back(std::move(c));
    }
    return tab;
  }
  throw Error(ErrorKind::kSchema, "input spec needs a 'tensor' or 'table' entry");
}

}  // namespace

std::vector<TestCase> generate_tests(const Program& program, const Json& spec, int count,
                                     std::uint64_t seed, RuntimeAdapter& runtime) {
  if (count < 1) throw Error(ErrorKind::kUsage, "test count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<TestCase> tests;
  for (int i = 0; i < count; ++i) {
    TestCase t;
    t.id = "t" + std::to_string(i);
    for (const auto& var : program.input_vars) {
      if (!spec.contains(var)) throw Error(ErrorKind::kSchema, "input spec has no entry for '" + var + "'");
      t.inputs.emplace(var, random_value(spec.at(var), rng));
    }
    RunOutcome out = runtime.run(program.to_text(), t.inputs);
    if (!out.ok) throw Error(ErrorKind::kPrecondition, "source program fails on generated input: " + out.message);
    t.expected_output = out.value;
    tests.push_back(std::move(t));
  }
  return tests;
}

}  // namespace apimorph
