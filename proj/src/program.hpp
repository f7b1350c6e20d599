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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "value.hpp"

namespace apimorph {

/// One line of a straight-line program: `binds = callee(args...)`.
///
/// The data flowing into a call is either named explicitly as the first
/// positional argument or, when omitted, is the value bound by the previous
/// line (the first input variable for line 0). `data_input` always holds the
/// resolved variable; `explicit_input` records whether it was written out.
struct CallSite {
  int line_index = 0;
  std::string callee;
  std::string binds;
  std::string data_input;
  bool explicit_input = false;
  std::vector<Literal> positional_args;
  std::vector<std::pair<std::string, Literal>> keyword_args;

  std::string call_text() const;  // callee(args) without the binding
  std::string to_text() const;    // binds = callee(args)
  /// Every literal in argument order, tuples flattened into their components.
  std::vector<Literal> flat_literals() const;
};

struct Program {
  std::vector<std::string> input_vars;
  std::vector<CallSite> lines;

  /// Canonical form: an `inputs:` header, then one call per line.
  std::string to_text() const;
  /// Lines [0, count).
  Program prefix(std::size_t count) const;
};

using SourceProgram = Program;

/// Parses the mini call syntax without resolving callees.
Program parse_program_syntax(const std::string& text);

/// Parses and resolves every callee and argument against `corpus`.
/// Throws kResolution for unknown callees/arguments, kScoping for
/// use-before-definition and rebinding.
Program parse_program(const std::string& text, const DocCorpus& corpus);

Program load_program(const std::string& path, const DocCorpus& corpus);

/// Name -> literal for every parameter of `entry`, defaults filled in.
/// Throws kResolution on arity/type mismatches.
std::map<std::string, Literal> bind_arguments(const CallSite& call, const ApiEntry& entry);

struct TestCase {
  std::string id;
  std::map<std::string, Value> inputs;
  Value expected_output;
  int line_scope = -1;  // -1: whole program
};

std::vector<TestCase> tests_from_json(const Json& j);
Json tests_to_json(const std::vector<TestCase>& tests);
std::vector<TestCase> load_tests(const std::string& path);

}  // namespace apimorph
