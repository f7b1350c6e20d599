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
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace apimorph {

/// Scalar a relation evaluates to. Arithmetic is defined on ints (floor
/// division), comparisons on numbers, equality on every alternative.
using RelValue = std::variant<std::int64_t, double, bool, std::string>;

enum class RelOp {
  kAdd, kSub, kMul, kDiv,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr,
  kNeg,
};

const char* to_string(RelOp op);

/// Expression tree over hole/parameter variables. Symbols are free names
/// (e.g. `stride[0]`, `out.shape[2]`) until bound; holes refer to sketch
/// hole ids after binding.
struct RelationExpr {
  enum class Kind { kConst, kSymbol, kHole, kUnary, kBinary };

  Kind kind = Kind::kConst;
  RelValue constant = std::int64_t{0};
  std::string symbol;
  int hole = 0;
  RelOp op = RelOp::kAdd;
  std::shared_ptr<const RelationExpr> lhs, rhs;

  static RelationExpr make_const(RelValue v);
  static RelationExpr make_symbol(std::string name);
  static RelationExpr make_hole(int id);
  static RelationExpr make_unary(RelOp op, RelationExpr operand);
  static RelationExpr make_binary(RelOp op, RelationExpr l, RelationExpr r);

  /// Infix rendering; holes print as `#id`. parse(to_string()) reproduces
  /// symbol-only trees.
  std::string to_string() const;

  void collect_symbols(std::set<std::string>& out) const;
  void collect_holes(std::set<int>& out) const;

  /// Replaces symbols using `resolve`; unresolved symbols stay in place.
  RelationExpr bind(const std::function<std::optional<RelationExpr>(const std::string&)>& resolve) const;

  /// Evaluates with hole values from `lookup`. Returns nullopt on type errors,
  /// division by zero, or unresolved symbols.
  std::optional<RelValue> evaluate(const std::function<std::optional<RelValue>(int)>& lookup) const;

  /// True iff the expression evaluates to boolean true.
  bool holds(const std::function<std::optional<RelValue>(int)>& lookup) const;
};

/// Parses the infix relation grammar:
///   or  := and ('or' and)*          and := cmp ('and' cmp)*
///   cmp := sum (('=='|'!='|'<'|'<='|'>'|'>=') sum)?
///   sum := prod (('+'|'-') prod)*   prod := unary (('*'|'/') unary)*
///   unary := '-' unary | atom
///   atom := INT | STRING | 'true' | 'false' | NAME | '#' INT | '(' or ')'
/// NAME is a dotted identifier with optional `[int]` index suffixes.
RelationExpr parse_relation(const std::string& text);

/// Floor division on integers (rounds toward negative infinity).
std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace apimorph
