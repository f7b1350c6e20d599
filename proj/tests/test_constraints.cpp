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

#include <random>

#include "constraints.hpp"
#include "mock_library.hpp"
#include "oracles.hpp"

using namespace apimorph;

namespace {

const std::string kMock = std::string(APIMORPH_DATA_DIR) + "/mock";

const DocCorpus& torch() {
  static const DocCorpus c = load_corpus(kMock + "/torchlet.json");
  return c;
}

Sketch int_sketch(std::vector<std::vector<std::int64_t>> domains) {
  Sketch s;
  CallTemplate t;
  t.api = "lib.f";
  for (std::size_t i = 0; i < domains.size(); ++i) {
    Hole h;
    h.id = static_cast<int>(i) + 1;
    h.param = "p" + std::to_string(i);
    for (auto v : domains[i]) h.domain.emplace_back(v);
    s.holes.push_back(h);
    t.slots.push_back({h.param, false, {h.id}});
  }
  s.chain.push_back(t);
  return s;
}

std::vector<Assignment> drain(Enumerator& e) {
  std::vector<Assignment> out;
  while (auto a = e.next()) out.push_back(*a);
  return out;
}

ConstraintSet typing_of(const Sketch& s) {
  std::vector<std::pair<int, TypeTag>> t;
  for (const auto& h : s.holes) t.emplace_back(h.id, h.type);
  return ConstraintSet(t);
}

}  // namespace

TEST_CASE("two holes with an ordering constraint") {
  auto s = int_sketch({{1, 2}, {1, 2}});
  auto cs = typing_of(s).with({parse_relation("#1 < #2"), Provenance::kSpec});
  Enumerator e(s, cs, 1000);
  auto all = drain(e);
  REQUIRE(all.size() == 1);
  CHECK(assignment_values(s, all[0]) == std::vector<Literal>{std::int64_t{1}, std::int64_t{2}});
}

TEST_CASE("without constraints every combination is produced in order") {
  auto s = int_sketch({{5, 6, 7}, {0, 1}, {9, 8, 7, 6}});
  Enumerator e(s, typing_of(s), 1000);
  auto all = drain(e);
  CHECK(all.size() == 24);
  CHECK(all == oracle::exhaustive(s, typing_of(s)));
  CHECK_FALSE(e.next().has_value());
}

TEST_CASE("enumeration equals the exhaustive filter on random instances") {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 60; ++i) {
    auto inst = oracle::random_enum_instance(rng);
    CAPTURE(i);
    Enumerator e(inst.sketch, inst.constraints, 1u << 30);
    CHECK(drain(e) == oracle::exhaustive(inst.sketch, inst.constraints));
  }
}

TEST_CASE("learned constraints apply to the rest of the stream") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto inst = oracle::random_enum_instance(rng, 2000);
    Enumerator e(inst.sketch, inst.constraints, 1u << 30);
    std::vector<Assignment> head;
    for (int k = 0; k < 3; ++k)
      if (auto a = e.next()) head.push_back(*a);
    auto learned = RelationExpr::make_binary(RelOp::kGe, RelationExpr::make_hole(1),
                                             RelationExpr::make_const(std::int64_t{2}));
    e.add_learned(learned);
    auto tail = drain(e);

    auto expected = oracle::exhaustive(inst.sketch, inst.constraints.add_learned(learned));
    std::vector<Assignment> after;
    for (const auto& a : expected)
      if (head.empty() || head.back() < a) after.push_back(a);
    CAPTURE(i);
    CHECK(tail == after);
  }
}

TEST_CASE("a learned in_channels > 0 excludes -1 and 0") {
  auto sk = generate_sketches(torch().at("torchlet.nn.Conv2d"), 1, {}, &torch())[0];
  for (auto& h : sk.holes) h.domain = {std::int64_t{32}, std::int64_t{3}, std::int64_t{-1}, std::int64_t{0}};
  Enumerator e(sk, typing_of(sk), 1u << 30);
  e.add_learned(parse_relation("#1 > 0"));
  std::size_t n = 0;
  while (auto a = e.next()) {
    auto v = std::get<std::int64_t>(assignment_values(sk, *a)[0]);
    CHECK(v != -1);
    CHECK(v != 0);
    ++n;
  }
  CHECK(n == 2u * 4 * 4 * 4 * 4 * 4 * 4 * 4);
  CHECK(e.constraints().count(Provenance::kLearned) == 1);
}

TEST_CASE("budget caps the stream") {
  auto s = int_sketch({{1, 2, 3}, {1, 2, 3}});
  Enumerator e(s, typing_of(s), 4);
  CHECK(drain(e).size() == 4);
  CHECK(e.budget_exhausted());
}

TEST_CASE("degenerate sketches") {
  auto none = int_sketch({});
  Enumerator e0(none, typing_of(none), 10);
  CHECK(drain(e0).size() == 1);

  auto empty = int_sketch({{1, 2}, {}});
  Enumerator e1(empty, typing_of(empty), 10);
  CHECK(drain(e1).empty());

  auto s = int_sketch({{1, 2}});
  Enumerator e2(s, typing_of(s).with({parse_relation("1 > 2"), Provenance::kSpec}), 10);
  CHECK(drain(e2).empty());
  Enumerator e3(s, typing_of(s).with({parse_relation("#3 > 0"), Provenance::kSpec}), 10);
  CHECK(drain(e3).empty());
}

TEST_CASE("Conv2d relations instantiate per shape binding") {
  auto sk = generate_sketches(torch().at("torchlet.nn.Conv2d"), 1, {}, &torch())[0];
  std::vector<ShapeBinding> shapes{{std::vector<std::int64_t>{2, 1, 9, 9}, std::vector<std::int64_t>{2, 4, 7, 7}},
                                   {std::vector<std::int64_t>{2, 1, 9, 9}, std::vector<std::int64_t>{2, 4, 7, 7}}};
  auto cs = compile_spec_constraints(torch().at("torchlet.nn.Conv2d"), sk, shapes);
  CHECK(cs.count(Provenance::kRelation) == 4);  // duplicates across identical bindings collapse
  CHECK(cs.typing().size() == 8);
  CHECK(cs.constraints()[0].expr.to_string() == "#1 == 1");

  auto off = compile_spec_constraints(torch().at("torchlet.nn.Conv2d"), sk, shapes, false);
  CHECK(off.constraints().empty());
  CHECK(off.typing().size() == 8);

  // One-dimensional shapes have no index 2 or 3: only channel relations remain.
  std::vector<ShapeBinding> flat{{std::vector<std::int64_t>{2, 1}, std::vector<std::int64_t>{2, 4}}};
  CHECK(compile_spec_constraints(torch().at("torchlet.nn.Conv2d"), sk, flat).count(Provenance::kRelation) == 2);
}

TEST_CASE("relations on the input shape are skipped after a layout change") {
  MockRuntime rt;
  auto sketches = generate_sketches(torch().at("torchlet.nn.Conv2d"), 2, rt.reshaping_vocabulary(), &torch());
  std::vector<ShapeBinding> shapes{{std::vector<std::int64_t>{2, 9, 9, 1}, std::vector<std::int64_t>{2, 4, 7, 7}}};
  auto permuted = compile_spec_constraints(torch().at("torchlet.nn.Conv2d"), sketches[1], shapes);
  CHECK(permuted.count(Provenance::kRelation) == 1);  // only out_channels == out.shape[1]
  auto cast = compile_spec_constraints(torch().at("torchlet.nn.Conv2d"), sketches[2], shapes);
  CHECK(cast.count(Provenance::kRelation) == 4);
}

TEST_CASE("enum membership is a spec constraint") {
  auto sk = generate_sketches(torch().at("torchlet.frame.DataFrame.query"), 1, {}, &torch())[0];
  auto cs = compile_spec_constraints(torch().at("torchlet.frame.DataFrame.query"), sk, {});
  CHECK(cs.count(Provenance::kSpec) == 1);
  sk.holes[0].domain = {std::string("v")};
  sk.holes[1].domain = {std::string("v"), std::string("gt"), std::string("eq")};
  sk.holes[2].domain = {0.5};
  Enumerator e(sk, cs, 100);
  auto all = drain(e);
  REQUIRE(all.size() == 2);
  CHECK(literal_equal(assignment_values(sk, all[0])[1], Literal{std::string("gt")}));
}

TEST_CASE("symbols map to target holes") {
  auto sk = generate_sketches(torch().at("torchlet.nn.Conv2d"), 1, {}, &torch())[0];
  CHECK(hole_for_symbol(sk, "in_channels") == 1);
  CHECK(hole_for_symbol(sk, "kernel_size[1]") == 4);
  CHECK(hole_for_symbol(sk, "padding[0]") == 7);
  CHECK_FALSE(hole_for_symbol(sk, "padding").has_value());
  CHECK_FALSE(hole_for_symbol(sk, "groups").has_value());
}

TEST_CASE("constraint sets are persistent values") {
  auto s = int_sketch({{1}});
  auto base = typing_of(s);
  auto more = base.add_learned(parse_relation("#1 > 0"));
  CHECK(base.constraints().empty());
  CHECK(more.constraints().size() == 1);
  CHECK(std::string(to_string(more.constraints()[0].provenance)) == "learned");
  CHECK(satisfies(more.constraints()[0], {Literal{std::int64_t{1}}}));
  CHECK_FALSE(satisfies(more.constraints()[0], {Literal{std::int64_t{0}}}));
}
