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

#include "constraints.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace apimorph {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kTyping: return "typing";
    case Provenance::kSpec: return "spec";
    case Provenance::kRelation: return "relation";
    case Provenance::kLearned: return "learned";
  }
  return "spec";
}

ConstraintSet ConstraintSet::with(Constraint c) const {
  ConstraintSet out = *this;
  out.constraints_.push_back(std::move(c));
  return out;
}

std::size_t ConstraintSet::count(Provenance p) const {
  if (p == Provenance::kTyping) return typing_.size();
  return static_cast<std::size_t>(std::count_if(constraints_.begin(), constraints_.end(),
                                                [p](const Constraint& c) { return c.provenance == p; }));
}

std::optional<RelValue> literal_to_rel(const Literal& l) {
  if (auto* i = std::get_if<std::int64_t>(&l)) return RelValue{*i};
  if (auto* d = std::get_if<double>(&l)) return RelValue{*d};
  if (auto* b = std::get_if<bool>(&l)) return RelValue{*b};
  if (auto* s = std::get_if<std::string>(&l)) return RelValue{*s};
  return std::nullopt;
}

Literal rel_to_literal(const RelValue& v) {
  return std::visit([](const auto& x) -> Literal { return x; }, v);
}

std::optional<int> hole_for_symbol(const Sketch& sketch, const std::string& symbol) {
  static const std::regex kIndexed(R"(([A-Za-z_][A-Za-z0-9_]*)\[(\d+)\])");
  std::string name = symbol;
  int component = -1;
  std::smatch m;
  if (std::regex_match(symbol, m, kIndexed)) {
    name = m[1].str();
    component = std::stoi(m[2].str());
  }
  const int target_call = static_cast<int>(sketch.chain.size()) - 1;
  for (const auto& h : sketch.holes)
    if (h.call_index == target_call && !h.reshaping && h.param == name && h.component == component) return h.id;
  return std::nullopt;
}

namespace {

std::optional<std::int64_t> shape_component(const std::optional<std::vector<std::int64_t>>& shape, long index) {
  if (!shape) return std::nullopt;
  long n = static_cast<long>(shape->size());
  long i = index < 0 ? n + index : index;
  if (i < 0 || i >= n) return std::nullopt;
  return (*shape)[static_cast<std::size_t>(i)];
}

}  // namespace

ConstraintSet compile_spec_constraints(const ApiEntry& entry, const Sketch& sketch,
                                       const std::vector<ShapeBinding>& shapes, bool use_spec) {
  std::vector<std::pair<int, TypeTag>> typing;
  for (const auto& h : sketch.holes) typing.emplace_back(h.id, h.type);
  ConstraintSet cs(std::move(typing));
  if (!use_spec) return cs;

  for (const auto& h : sketch.holes) {
    if (h.type != TypeTag::kEnum || h.reshaping) continue;
    const ParamSpec* p = entry.find_param(h.param);
    if (!p) continue;
    std::optional<RelationExpr> member;
    for (const auto& v : p->enum_values) {
      auto eq = RelationExpr::make_binary(RelOp::kEq, RelationExpr::make_hole(h.id), RelationExpr::make_const(v));
      member = member ? RelationExpr::make_binary(RelOp::kOr, *member, eq) : eq;
    }
    if (member) cs = cs.with({*member, Provenance::kSpec});
  }

  static const std::regex kShape(R"((in|out)\.shape\[(-?\d+)\])");
  std::set<std::string> seen;
  for (const auto& rel : entry.relations) {
    std::set<std::string> syms;
    rel.collect_symbols(syms);
    bool uses_shape = false, uses_in = false;
    for (const auto& s : syms) {
      std::smatch m;
      if (std::regex_match(s, m, kShape)) {
        uses_shape = true;
        uses_in = uses_in || m[1].str() == "in";
      }
    }
    if (uses_in && sketch.reshapes_layout()) continue;
    std::vector<ShapeBinding> bindings = uses_shape ? shapes : std::vector<ShapeBinding>{ShapeBinding{}};
    for (const auto& b : bindings) {
      bool ok = true;
      RelationExpr bound = rel.bind([&](const std::string& s) -> std::optional<RelationExpr> {
        std::smatch m;
        if (std::regex_match(s, m, kShape)) {
          auto v = shape_component(m[1].str() == "in" ? b.in : b.out, std::stol(m[2].str()));
          if (!v) {
            ok = false;
            return std::nullopt;
          }
          return RelationExpr::make_const(*v);
        }
        if (auto h = hole_for_symbol(sketch, s)) return RelationExpr::make_hole(*h);
        ok = false;
        return std::nullopt;
      });
      if (!ok) continue;
      std::string text = bound.to_string();
      if (!seen.insert(text).second) continue;
      cs = cs.with({bound, Provenance::kRelation});
    }
  }
  return cs;
}

std::vector<Literal> assignment_values(const Sketch& sketch, const Assignment& a) {
  std::vector<Literal> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(sketch.holes[i].domain[a[i]]);
  return out;
}

bool satisfies(const Constraint& c, const std::vector<Literal>& values) {
  return c.expr.holds([&](int id) -> std::optional<RelValue> {
    if (id < 1 || id > static_cast<int>(values.size())) return std::nullopt;
    return literal_to_rel(values[static_cast<std::size_t>(id - 1)]);
  });
}

// ---------------------------------------------------------------------------

Enumerator::Enumerator(const Sketch& sketch, ConstraintSet cs, std::uint64_t budget)
    : sketch_(sketch), cs_(std::move(cs)), budget_(budget) {
  compile();
}

void Enumerator::add_learned(RelationExpr expr) {
  cs_ = cs_.add_learned(std::move(expr));
  compile();
}

void Enumerator::compile() {
  const std::size_t n = sketch_.holes.size();
  compiled_.clear();
  by_last_hole_.assign(n, {});
  touching_.assign(n, {});
  for (const auto& c : cs_.constraints()) {
    std::set<int> ids;
    c.expr.collect_holes(ids);
    Compiled cc{c.expr, {}};
    bool in_range = true;
    for (int id : ids) {
      if (id < 1 || id > static_cast<int>(n)) in_range = false;
      cc.holes.push_back(id - 1);
    }
    if (!in_range) {
      done_ = true;  // refers to holes that do not exist: nothing can satisfy it
      continue;
    }
    std::size_t k = compiled_.size();
    compiled_.push_back(std::move(cc));
    if (compiled_[k].holes.empty()) {
      if (!compiled_[k].expr.holds([](int) { return std::nullopt; })) done_ = true;
      continue;
    }
    by_last_hole_[static_cast<std::size_t>(compiled_[k].holes.back())].push_back(k);
    for (int h : compiled_[k].holes) touching_[static_cast<std::size_t>(h)].push_back(k);
  }
}

bool Enumerator::consistent(const Compiled& c) const {
  return c.expr.holds([this](int id) { return values_[static_cast<std::size_t>(id - 1)]; });
}

std::optional<Assignment> Enumerator::next() {
  if (done_ || emitted_ >= budget_) return std::nullopt;
  const std::size_t n = sketch_.holes.size();
  for (const auto& h : sketch_.holes)
    if (h.domain.empty()) {
      done_ = true;
      return std::nullopt;
    }
  if (n == 0) {
    // A hole-free sketch has exactly one (empty) assignment.
    if (last_) {
      done_ = true;
      return std::nullopt;
    }
    last_ = Assignment{};
    ++emitted_;
    return last_;
  }

  cur_.assign(n, 0);
  assigned_.assign(n, 0);
  values_.assign(n, std::nullopt);
  std::vector<std::vector<char>> alive(n);
  for (std::size_t h = 0; h < n; ++h) alive[h].assign(sketch_.holes[h].domain.size(), 1);
  // Unary constraints prune the root domains.
  for (const auto& c : compiled_) {
    if (c.holes.size() != 1) continue;
    auto h = static_cast<std::size_t>(c.holes[0]);
    for (std::size_t i = 0; i < alive[h].size(); ++i) {
      if (!alive[h][i]) continue;
      values_[h] = literal_to_rel(sketch_.holes[h].domain[i]);
      if (!consistent(c)) alive[h][i] = 0;
    }
    values_[h].reset();
  }

  if (!search(0, last_.has_value(), alive)) {
    done_ = true;
    return std::nullopt;
  }
  last_ = cur_;
  ++emitted_;
  return cur_;
}

bool Enumerator::search(std::size_t level, bool tight, std::vector<std::vector<char>>& alive) {
  const std::size_t n = sketch_.holes.size();
  if (level == n) return !tight;
  const auto& domain = sketch_.holes[level].domain;
  std::size_t start = 0;
  if (tight) start = (*last_)[level] + (level + 1 == n ? 1 : 0);

  for (std::size_t idx = start; idx < domain.size(); ++idx) {
    if (!alive[level][idx]) continue;
    cur_[level] = idx;
    assigned_[level] = 1;
    values_[level] = literal_to_rel(domain[idx]);

    bool ok = true;
    for (std::size_t k : by_last_hole_[level]) {
      if (!consistent(compiled_[k])) {
        ok = false;
        break;
      }
    }
    std::vector<std::vector<char>> next_alive;
    if (ok) {
      next_alive = alive;
      for (std::size_t k : touching_[level]) {
        const Compiled& c = compiled_[k];
        int open = -1, open_count = 0;
        for (int h : c.holes)
          if (!assigned_[static_cast<std::size_t>(h)]) {
            open = h;
            ++open_count;
          }
        if (open_count != 1) continue;
        auto j = static_cast<std::size_t>(open);
        bool any = false;
        for (std::size_t v = 0; v < next_alive[j].size(); ++v) {
          if (!next_alive[j][v]) continue;
          values_[j] = literal_to_rel(sketch_.holes[j].domain[v]);
          if (consistent(c))
            any = true;
          else
            next_alive[j][v] = 0;
        }
        values_[j].reset();
        if (!any) {
          ok = false;
          break;
        }
      }
    }
    if (ok && search(level + 1, tight && idx == (*last_)[level], next_alive)) return true;
    assigned_[level] = 0;
    values_[level].reset();
  }
  return false;
}

// ---------------------------------------------------------------------------

std::string CandidateProgram::text(const std::string& input_var) const {
  Program p;
  p.input_vars = {input_var};
  p.lines = calls;
  return p.to_text();
}

std::string CandidateProgram::snippet() const {
  std::string out;
  for (std::size_t i = 0; i < calls.size(); ++i) out += (i ? "; " : "") + calls[i].to_text();
  return out;
}

CandidateProgram realize_values(const Sketch& sketch, const std::vector<Literal>& values, const std::string& binds,
                                const std::string& data_input) {
  CandidateProgram prog;
  for (std::size_t c = 0; c < sketch.chain.size(); ++c) {
    const auto& tmpl = sketch.chain[c];
    CallSite call;
    call.line_index = static_cast<int>(c);
    call.callee = tmpl.api;
    call.binds = c + 1 == sketch.chain.size() ? binds : binds + "_" + std::to_string(c);
    call.data_input = c == 0 ? data_input : prog.calls.back().binds;
    for (const auto& slot : tmpl.slots) {
      Literal v;
      if (slot.holes.size() == 1) {
        v = values[static_cast<std::size_t>(slot.holes[0] - 1)];
      } else {
        IntTuple t;
        for (int h : slot.holes) t.push_back(std::get<std::int64_t>(values[static_cast<std::size_t>(h - 1)]));
        v = t;
      }
      if (slot.keyword)
        call.keyword_args.emplace_back(slot.param, v);
      else
        call.positional_args.push_back(v);
    }
    prog.calls.push_back(std::move(call));
  }
  return prog;
}

CandidateProgram realize(const Sketch& sketch, const Assignment& a, const std::string& binds,
                         const std::string& data_input) {
  return realize_values(sketch, assignment_values(sketch, a), binds, data_input);
}

}  // namespace apimorph
