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

#include "relation.hpp"

#include <cctype>
#include <cmath>

#include "error.hpp"

namespace apimorph {

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::kAdd: return "+";
    case RelOp::kSub: return "-";
    case RelOp::kMul: return "*";
    case RelOp::kDiv: return "/";
    case RelOp::kEq: return "==";
    case RelOp::kNe: return "!=";
    case RelOp::kLt: return "<";
    case RelOp::kLe: return "<=";
    case RelOp::kGt: return ">";
    case RelOp::kGe: return ">=";
    case RelOp::kAnd: return "and";
    case RelOp::kOr: return "or";
    case RelOp::kNeg: return "-";
  }
  return "?";
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

RelationExpr RelationExpr::make_const(RelValue v) {
  RelationExpr e;
  e.kind = Kind::kConst;
  e.constant = std::move(v);
  return e;
}

RelationExpr RelationExpr::make_symbol(std::string name) {
  RelationExpr e;
  e.kind = Kind::kSymbol;
  e.symbol = std::move(name);
  return e;
}

RelationExpr RelationExpr::make_hole(int id) {
  RelationExpr e;
  e.kind = Kind::kHole;
  e.hole = id;
  return e;
}

RelationExpr RelationExpr::make_unary(RelOp op, RelationExpr operand) {
  RelationExpr e;
  e.kind = Kind::kUnary;
  e.op = op;
  e.lhs = std::make_shared<const RelationExpr>(std::move(operand));
  return e;
}

RelationExpr RelationExpr::make_binary(RelOp op, RelationExpr l, RelationExpr r) {
  RelationExpr e;
  e.kind = Kind::kBinary;
  e.op = op;
  e.lhs = std::make_shared<const RelationExpr>(std::move(l));
  e.rhs = std::make_shared<const RelationExpr>(std::move(r));
  return e;
}

namespace {

int precedence(RelOp op) {
  switch (op) {
    case RelOp::kOr: return 1;
    case RelOp::kAnd: return 2;
    case RelOp::kEq: case RelOp::kNe: case RelOp::kLt:
    case RelOp::kLe: case RelOp::kGt: case RelOp::kGe: return 3;
    case RelOp::kAdd: case RelOp::kSub: return 4;
    case RelOp::kMul: case RelOp::kDiv: return 5;
    case RelOp::kNeg: return 6;
  }
  return 0;
}

int expr_precedence(const RelationExpr& e) {
  if (e.kind == RelationExpr::Kind::kBinary || e.kind == RelationExpr::Kind::kUnary)
    return precedence(e.op);
  return 7;
}

std::string const_to_string(const RelValue& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&v)) {
    std::string s = std::to_string(*d);
    return s;
  }
  if (auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  std::string out = "\"";
  for (char c : std::get<std::string>(v)) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string RelationExpr::to_string() const {
  switch (kind) {
    case Kind::kConst: return const_to_string(constant);
    case Kind::kSymbol: return symbol;
    case Kind::kHole: return "#" + std::to_string(hole);
    case Kind::kUnary: {
      std::string inner = lhs->to_string();
      if (expr_precedence(*lhs) < precedence(op)) inner = "(" + inner + ")";
      return "-" + inner;
    }
    case Kind::kBinary: {
      int p = precedence(op);
      std::string l = lhs->to_string();
      std::string r = rhs->to_string();
      // Left-associative: the right operand needs parens at equal precedence.
      // Comparisons do not chain, so both sides need them.
      if (expr_precedence(*lhs) < p || (p == 3 && expr_precedence(*lhs) == p)) l = "(" + l + ")";
      if (expr_precedence(*rhs) <= p) r = "(" + r + ")";
      return l + " " + apimorph::to_string(op) + " " + r;
    }
  }
  return "";
}

void RelationExpr::collect_symbols(std::set<std::string>& out) const {
  if (kind == Kind::kSymbol) out.insert(symbol);
  if (lhs) lhs->collect_symbols(out);
  if (rhs) rhs->collect_symbols(out);
}

void RelationExpr::collect_holes(std::set<int>& out) const {
  if (kind == Kind::kHole) out.insert(hole);
  if (lhs) lhs->collect_holes(out);
  if (rhs) rhs->collect_holes(out);
}

RelationExpr RelationExpr::bind(
    const std::function<std::optional<RelationExpr>(const std::string&)>& resolve) const {
  switch (kind) {
    case Kind::kSymbol: {
      if (auto r = resolve(symbol)) return *r;
      return *this;
    }
    case Kind::kUnary: return make_unary(op, lhs->bind(resolve));
    case Kind::kBinary: return make_binary(op, lhs->bind(resolve), rhs->bind(resolve));
    default: return *this;
  }
}

namespace {

std::optional<double> as_number(const RelValue& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

}  // namespace

std::optional<RelValue> RelationExpr::evaluate(
    const std::function<std::optional<RelValue>(int)>& lookup) const {
  switch (kind) {
    case Kind::kConst: return constant;
    case Kind::kSymbol: return std::nullopt;
    case Kind::kHole: return lookup(hole);
    case Kind::kUnary: {
      auto v = lhs->evaluate(lookup);
      if (!v) return std::nullopt;
      if (auto* i = std::get_if<std::int64_t>(&*v)) return RelValue{-*i};
      if (auto* d = std::get_if<double>(&*v)) return RelValue{-*d};
      return std::nullopt;
    }
    case Kind::kBinary: break;
  }

  if (op == RelOp::kAnd || op == RelOp::kOr) {
    auto l = lhs->evaluate(lookup);
    if (!l || !std::holds_alternative<bool>(*l)) return std::nullopt;
    bool lb = std::get<bool>(*l);
    if (op == RelOp::kAnd && !lb) return RelValue{false};
    if (op == RelOp::kOr && lb) return RelValue{true};
    auto r = rhs->evaluate(lookup);
    if (!r || !std::holds_alternative<bool>(*r)) return std::nullopt;
    return *r;
  }

  auto l = lhs->evaluate(lookup);
  auto r = rhs->evaluate(lookup);
  if (!l || !r) return std::nullopt;

  switch (op) {
    case RelOp::kAdd: case RelOp::kSub: case RelOp::kMul: case RelOp::kDiv: {
      auto* li = std::get_if<std::int64_t>(&*l);
      auto* ri = std::get_if<std::int64_t>(&*r);
      if (li && ri) {
        switch (op) {
          case RelOp::kAdd: return RelValue{*li + *ri};
          case RelOp::kSub: return RelValue{*li - *ri};
          case RelOp::kMul: return RelValue{*li * *ri};
          default:
            if (*ri == 0) return std::nullopt;
            return RelValue{floor_div(*li, *ri)};
        }
      }
      auto ld = as_number(*l), rd = as_number(*r);
      if (!ld || !rd) return std::nullopt;
      switch (op) {
        case RelOp::kAdd: return RelValue{*ld + *rd};
        case RelOp::kSub: return RelValue{*ld - *rd};
        case RelOp::kMul: return RelValue{*ld * *rd};
        default:
          if (*rd == 0.0) return std::nullopt;
          return RelValue{std::floor(*ld / *rd)};
      }
    }
    case RelOp::kEq: case RelOp::kNe: {
      bool eq;
      auto ld = as_number(*l), rd = as_number(*r);
      if (ld && rd)
        eq = *ld == *rd;
      else if (l->index() == r->index())
        eq = *l == *r;
      else
        return std::nullopt;
      return RelValue{op == RelOp::kEq ? eq : !eq};
    }
    default: {
      auto ld = as_number(*l), rd = as_number(*r);
      if (!ld || !rd) return std::nullopt;
      switch (op) {
        case RelOp::kLt: return RelValue{*ld < *rd};
        case RelOp::kLe: return RelValue{*ld <= *rd};
        case RelOp::kGt: return RelValue{*ld > *rd};
        default: return RelValue{*ld >= *rd};
      }
    }
  }
}

bool RelationExpr::holds(const std::function<std::optional<RelValue>(int)>& lookup) const {
  auto v = evaluate(lookup);
  return v && std::holds_alternative<bool>(*v) && std::get<bool>(*v);
}

// ---------------------------------------------------------------------------

namespace {

class RelationParser {
 public:
  explicit RelationParser(const std::string& text) : text_(text) {}

  RelationExpr parse() {
    RelationExpr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + text_.substr(pos_) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::kValidation,
                "bad relation '" + text_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) != 0) return false;
    bool word = std::isalpha(static_cast<unsigned char>(tok[0]));
    if (word && pos_ + tok.size() < text_.size()) {
      char next = text_[pos_ + tok.size()];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    }
    pos_ += tok.size();
    return true;
  }

  RelationExpr parse_or() {
    RelationExpr e = parse_and();
    while (accept("or") || accept("||")) e = RelationExpr::make_binary(RelOp::kOr, e, parse_and());
    return e;
  }

  RelationExpr parse_and() {
    RelationExpr e = parse_cmp();
    while (accept("and") || accept("&&")) e = RelationExpr::make_binary(RelOp::kAnd, e, parse_cmp());
    return e;
  }

  RelationExpr parse_cmp() {
    RelationExpr e = parse_sum();
    static const std::pair<const char*, RelOp> kOps[] = {
        {"==", RelOp::kEq}, {"!=", RelOp::kNe}, {"<=", RelOp::kLe},
        {">=", RelOp::kGe}, {"<", RelOp::kLt},  {">", RelOp::kGt}};
    for (const auto& [tok, op] : kOps) {
      if (accept(tok)) return RelationExpr::make_binary(op, e, parse_sum());
    }
    return e;
  }

  RelationExpr parse_sum() {
    RelationExpr e = parse_prod();
    for (;;) {
      if (accept("+"))
        e = RelationExpr::make_binary(RelOp::kAdd, e, parse_prod());
      else if (accept("-"))
        e = RelationExpr::make_binary(RelOp::kSub, e, parse_prod());
      else
        return e;
    }
  }

  RelationExpr parse_prod() {
    RelationExpr e = parse_unary();
    for (;;) {
      if (accept("*"))
        e = RelationExpr::make_binary(RelOp::kMul, e, parse_unary());
      else if (accept("/"))
        e = RelationExpr::make_binary(RelOp::kDiv, e, parse_unary());
      else
        return e;
    }
  }

  RelationExpr parse_unary() {
    if (accept("-")) {
      RelationExpr inner = parse_unary();
      if (inner.kind == RelationExpr::Kind::kConst &&
          std::holds_alternative<std::int64_t>(inner.constant))
        return RelationExpr::make_const(-std::get<std::int64_t>(inner.constant));
      return RelationExpr::make_unary(RelOp::kNeg, inner);
    }
    return parse_atom();
  }

  std::int64_t parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  RelationExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RelationExpr e = parse_or();
      if (!accept(")")) fail("expected ')'");
      return e;
    }
    if (c == '#') {
      ++pos_;
      return RelationExpr::make_hole(static_cast<int>(parse_int()));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RelationExpr::make_const(parse_int());
    if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      return RelationExpr::make_const(s);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size()) {
        char ch = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') {
          name += ch;
          ++pos_;
        } else if (ch == '[') {
          ++pos_;
          std::int64_t idx = parse_int();
          if (!accept("]")) fail("expected ']'");
          name += "[" + std::to_string(idx) + "]";
        } else {
          break;
        }
      }
      if (name == "true") return RelationExpr::make_const(true);
      if (name == "false") return RelationExpr::make_const(false);
      if (name == "and" || name == "or") fail("operator where operand expected");
      return RelationExpr::make_symbol(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

RelationExpr parse_relation(const std::string& text) { return RelationParser(text).parse(); }

}  // namespace apimorph
