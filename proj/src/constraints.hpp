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
#include <optional>
#include <string>
#include <vector>

#include "relation.hpp"
#include "sketch.hpp"

namespace apimorph {

enum class Provenance { kTyping, kSpec, kRelation, kLearned };

const char* to_string(Provenance p);

struct Constraint {
  RelationExpr expr;  // over holes only
  Provenance provenance = Provenance::kSpec;
};

/// Immutable set of constraints over the holes of one sketch. Typing and
/// "exactly one value per hole" are structural: every hole draws a single
/// value from a domain that only holds values of its type.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<std::pair<int, TypeTag>> typing) : typing_(std::move(typing)) {}

  const std::vector<std::pair<int, TypeTag>>& typing() const { return typing_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  ConstraintSet with(Constraint c) const;
  ConstraintSet add_learned(RelationExpr expr) const { return with({std::move(expr), Provenance::kLearned}); }
  std::size_t count(Provenance p) const;

 private:
  std::vector<std::pair<int, TypeTag>> typing_;
  std::vector<Constraint> constraints_;
};

/// Observed shapes of the value a line consumes (`in`) and produces (`out`)
/// for one line test.
struct ShapeBinding {
  std::optional<std::vector<std::int64_t>> in;
  std::optional<std::vector<std::int64_t>> out;
};

/// Typing constraints for every hole; with `use_spec` also enum membership
/// and every documented relation instantiated once per shape binding.
/// Relations that mention `in.shape` are skipped when the sketch reshapes
/// the layout first, and relations whose shape index does not exist for a
/// binding are skipped for that binding.
ConstraintSet compile_spec_constraints(const ApiEntry& entry, const Sketch& sketch,
                                       const std::vector<ShapeBinding>& shapes, bool use_spec = true);

/// Maps a parameter symbol (`stride[0]`, `in_channels`) of the target call
/// onto its hole.
std::optional<int> hole_for_symbol(const Sketch& sketch, const std::string& symbol);

/// Domain indices, one per hole (hole id i at position i - 1).
using Assignment = std::vector<std::size_t>;

std::vector<Literal> assignment_values(const Sketch& sketch, const Assignment& a);

/// Checks one constraint against a full vector of hole values.
bool satisfies(const Constraint& c, const std::vector<Literal>& values);

/// Streams the satisfying assignments of a sketch in lexicographic order of
/// (hole id, domain index), hole 1 most significant. Backtracking with
/// forward checking. Learned constraints may be added between calls to
/// next(); the stream resumes after the last emitted assignment.
class Enumerator {
 public:
  Enumerator(const Sketch& sketch, ConstraintSet cs, std::uint64_t budget);

  std::optional<Assignment> next();
  void add_learned(RelationExpr expr);

  const ConstraintSet& constraints() const { return cs_; }
  std::uint64_t emitted() const { return emitted_; }
  bool budget_exhausted() const { return emitted_ >= budget_; }

 private:
  struct Compiled {
    RelationExpr expr;
    std::vector<int> holes;  // 0-based, ascending
  };

  void compile();
  bool search(std::size_t level, bool tight, std::vector<std::vector<char>>& alive);
  bool consistent(const Compiled& c) const;

  const Sketch& sketch_;
  ConstraintSet cs_;
  std::uint64_t budget_;
  std::uint64_t emitted_ = 0;
  std::vector<Compiled> compiled_;
  std::vector<std::vector<std::size_t>> by_last_hole_;  // constraints checked when this hole is assigned
  std::vector<std::vector<std::size_t>> touching_;      // constraints mentioning this hole
  std::optional<Assignment> last_;
  bool done_ = false;
  Assignment cur_;
  std::vector<char> assigned_;
  std::vector<std::optional<RelValue>> values_;
};

/// A concrete target-side call chain.
struct CandidateProgram {
  std::vector<CallSite> calls;

  /// One call per line, `inputs:` header naming `input_var`.
  std::string text(const std::string& input_var) const;
  std::string snippet() const;  // calls only, ';'-separated
};

/// Substitutes `a` into `sketch`. Intermediate results are bound to
/// `binds_0`, `binds_1`, ... and the target call binds `binds`; the first
/// call consumes `data_input`.
CandidateProgram realize(const Sketch& sketch, const Assignment& a, const std::string& binds,
                         const std::string& data_input);
CandidateProgram realize_values(const Sketch& sketch, const std::vector<Literal>& values, const std::string& binds,
                                const std::string& data_input);

std::optional<RelValue> literal_to_rel(const Literal& l);
Literal rel_to_literal(const RelValue& v);

}  // namespace apimorph
