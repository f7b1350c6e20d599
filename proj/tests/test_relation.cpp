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

#include <cmath>
#include <map>
#include <random>

#include "error.hpp"
#include "relation.hpp"

using namespace apimorph;

namespace {

std::optional<RelValue> no_holes(int) { return std::nullopt; }

RelValue eval(const std::string& text, std::map<int, RelValue> holes = {}) {
  auto v = parse_relation(text).evaluate([&](int id) -> std::optional<RelValue> {
    auto it = holes.find(id);
    if (it == holes.end()) return std::nullopt;
    return it->second;
  });
  REQUIRE(v.has_value());
  return *v;
}

RelationExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  static const std::vector<std::string> syms = {"in_channels", "stride[0]", "out.shape[-1]", "padding[1]", "n"};
  if (depth == 0 || pick(rng) < 3) {
    int k = pick(rng);
    if (k < 5) return RelationExpr::make_symbol(syms[static_cast<std::size_t>(k)]);
    return RelationExpr::make_const(std::int64_t{k - 3});
  }
  static const std::vector<RelOp> ops = {RelOp::kAdd, RelOp::kSub, RelOp::kMul, RelOp::kDiv, RelOp::kEq, RelOp::kNe,
                                         RelOp::kLt,  RelOp::kLe,  RelOp::kGt,  RelOp::kGe,  RelOp::kAnd, RelOp::kOr};
  int k = pick(rng);
  if (k == 9) return RelationExpr::make_unary(RelOp::kNeg, random_expr(rng, depth - 1));
  std::uniform_int_distribution<std::size_t> op_pick(0, ops.size() - 1);
  return RelationExpr::make_binary(ops[op_pick(rng)], random_expr(rng, depth - 1), random_expr(rng, depth - 1));
}

}  // namespace

TEST_CASE("floor division rounds toward negative infinity") {
  for (std::int64_t a = -9; a <= 9; ++a)
    for (std::int64_t b : {-4, -3, -1, 1, 2, 5}) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(floor_div(a, b) == static_cast<std::int64_t>(std::floor(static_cast<double>(a) / b)));
    }
}

TEST_CASE("arithmetic and comparison evaluation") {
  CHECK(std::get<std::int64_t>(eval("(7 + 2 * 1 - 3) / 2 + 1")) == 4);
  CHECK(std::get<std::int64_t>(eval("-7 / 2")) == -4);
  CHECK(std::get<bool>(eval("1 < 2 and 2 <= 2 or false",
                            {})) == true);
  CHECK(std::get<bool>(eval("#1 > 0", {{1, std::int64_t{-1}}})) == false);
  CHECK(std::get<bool>(eval("#1 == \"same\"", {{1, std::string("same")}})) == true);
  CHECK(std::get<bool>(eval("#1 != 2", {{1, 2.0}})) == false);
}

TEST_CASE("undefined evaluations yield nothing") {
  CHECK_FALSE(parse_relation("1 / 0").evaluate(no_holes).has_value());
  CHECK_FALSE(parse_relation("x + 1").evaluate(no_holes).has_value());
  CHECK_FALSE(parse_relation("\"a\" < 1").evaluate(no_holes).has_value());
  CHECK_FALSE(parse_relation("1 and true").evaluate(no_holes).has_value());
  CHECK_FALSE(parse_relation("1 + 1").holds(no_holes));
}

TEST_CASE("short circuit skips the undefined side") {
  CHECK(parse_relation("false and 1 / 0 == 1").evaluate(no_holes).has_value());
  CHECK(parse_relation("true or x > 1").holds(no_holes));
}

TEST_CASE("symbols are collected and bound") {
  auto e = parse_relation("out.shape[2] == (in.shape[2] + 2 * padding[0] - kernel_size[0]) / stride[0] + 1");
  std::set<std::string> syms;
  e.collect_symbols(syms);
  CHECK(syms == std::set<std::string>{"out.shape[2]", "in.shape[2]", "padding[0]", "kernel_size[0]", "stride[0]"});

  auto bound = e.bind([](const std::string& s) -> std::optional<RelationExpr> {
    if (s == "out.shape[2]") return RelationExpr::make_const(std::int64_t{4});
    if (s == "in.shape[2]") return RelationExpr::make_const(std::int64_t{9});
    if (s == "padding[0]") return RelationExpr::make_hole(1);
    if (s == "kernel_size[0]") return RelationExpr::make_hole(2);
    return std::nullopt;
  });
  std::set<int> holes;
  bound.collect_holes(holes);
  CHECK(holes == std::set<int>{1, 2});
  std::set<std::string> left;
  bound.collect_symbols(left);
  CHECK(left == std::set<std::string>{"stride[0]"});
  CHECK(bound.to_string().find("#1") != std::string::npos);
}

TEST_CASE("hole syntax parses") {
  auto e = parse_relation("#1 < #2");
  CHECK(e.holds([](int id) -> std::optional<RelValue> { return RelValue{std::int64_t{id}}; }));
}

TEST_CASE("malformed relations are validation errors") {
  for (const char* bad : {"", "a <", "(a", "a b", "a == == b", "#x > 1", "a[1"}) {
    CAPTURE(bad);
    try {
      parse_relation(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kValidation);
    }
  }
}

TEST_CASE("printing then parsing preserves random symbol trees") {
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 300; ++i) {
    auto e = random_expr(rng, 4);
    std::string text = e.to_string();
    CAPTURE(text);
    CHECK(parse_relation(text).to_string() == text);
  }
}
