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

#include "errmsg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <unordered_set>

#include "stemmer.hpp"

namespace apimorph {

const char* to_string(PosTag t) {
  switch (t) {
    case PosTag::kNoun: return "NN";
    case PosTag::kVerb: return "VB";
    case PosTag::kVbn: return "VBN";
    case PosTag::kVbg: return "VBG";
    case PosTag::kAdj: return "JJ";
    case PosTag::kAdjNum: return "JJN";
    case PosTag::kAdv: return "RB";
    case PosTag::kPrep: return "IN";
    case PosTag::kConj: return "CC";
    case PosTag::kCard: return "CD";
    case PosTag::kCardNeg: return "CDN";
    case PosTag::kDet: return "DT";
    case PosTag::kPunct: return "PU";
  }
  return "NN";
}

namespace {

const std::unordered_set<std::string>& words(std::initializer_list<const char*> list,
                                             std::unordered_set<std::string>& storage) {
  for (const char* w : list) storage.insert(w);
  return storage;
}

bool in(const std::unordered_set<std::string>& set, const std::string& w) { return set.count(w) > 0; }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PosTag tag_word(const std::string& w) {
  static std::unordered_set<std::string> s_det, s_prep, s_conj, s_adv, s_verb, s_vbn, s_adj, s_ing_nouns;
  static const auto& det = words({"the", "a", "an", "this", "that", "these", "those", "each", "every", "any"}, s_det);
  static const auto& prep =
      words({"with", "of", "for", "in", "on", "at", "from", "by", "to", "into", "after", "before", "than", "over",
             "under", "between", "within", "without", "about", "as", "per", "via", "onto", "across", "through",
             "against"},
            s_prep);
  static const auto& conj = words({"and", "but", "or", "nor", "yet"}, s_conj);
  static const auto& adv =
      words({"not", "never", "also", "only", "too", "very", "currently", "always", "still", "already", "instead"},
            s_adv);
  static const auto& verb =
      words({"is", "are", "was", "were", "be", "been", "being", "am", "got", "get", "gets", "has", "have", "had",
             "must", "should", "can", "cannot", "could", "would", "will", "may", "might", "does", "do", "did",
             "create", "creates", "expect", "expects", "require", "requires", "contain", "contains", "take",
             "takes", "need", "needs", "receive", "receives"},
            s_verb);
  static const auto& vbn =
      words({"given", "known", "found", "shown", "done", "seen", "made", "written", "taken", "set"}, s_vbn);
  static const auto& adj =
      words({"negative", "positive", "non-positive", "non-negative", "nonnegative", "nonpositive", "zero-size",
             "zero-sized", "empty", "invalid", "valid", "duplicate", "distinct", "out-of-range", "unsupported",
             "wrong", "different", "greater", "smaller", "larger", "less", "unknown", "illegal", "incompatible",
             "inconsistent", "same", "equal", "null", "undefined", "unexpected"},
            s_adj);
  static const auto& ing_nouns =
      words({"string", "padding", "embedding", "thing", "setting", "mapping", "encoding", "spring"}, s_ing_nouns);

  if (in(det, w)) return PosTag::kDet;
  if (in(prep, w)) return PosTag::kPrep;
  if (in(conj, w)) return PosTag::kConj;
  if (in(adv, w)) return PosTag::kAdv;
  if (in(verb, w)) return PosTag::kVerb;
  if (in(adj, w)) return PosTag::kAdj;
  if (in(vbn, w)) return PosTag::kVbn;
  if (in(ing_nouns, w)) return PosTag::kNoun;
  if (w.size() > 4 && ends_with(w, "ing")) return PosTag::kVbg;
  if (w.size() > 3 && ends_with(w, "ed")) return PosTag::kVbn;
  if (w.size() > 5 && (ends_with(w, "ive") || ends_with(w, "ous") || ends_with(w, "ible"))) return PosTag::kAdj;
  if (w.size() > 6 && ends_with(w, "able") && w != "variable") return PosTag::kAdj;
  return PosTag::kNoun;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tag_message(const std::string& message) {
  std::string s;
  s.reserve(message.size());
  for (char c : message) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto digit = [&](std::size_t k) { return k < n && std::isdigit(static_cast<unsigned char>(s[k])); };
  while (i < n) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    bool neg = c == '-' && digit(i + 1) && (i == 0 || !word_char(s[i - 1]));
    if (digit(i) || neg) {
      std::size_t start = i;
      if (neg) ++i;
      while (digit(i)) ++i;
      if (i + 1 < n && s[i] == '.' && digit(i + 1)) {
        ++i;
        while (digit(i)) ++i;
      }
      if (!neg && i + 1 < n && s[i] == '-' && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        while (i < n && (word_char(s[i]) || (s[i] == '-' && i + 1 < n && word_char(s[i + 1])))) ++i;
        out.push_back({s.substr(start, i - start), PosTag::kAdjNum});
        continue;
      }
      if (i < n && word_char(s[i])) {
        // Identifier starting with digits, e.g. "2d".
        while (i < n && word_char(s[i])) ++i;
        out.push_back({s.substr(start, i - start), PosTag::kNoun});
        continue;
      }
      out.push_back({s.substr(start, i - start), neg ? PosTag::kCardNeg : PosTag::kCard});
      continue;
    }
    if (word_char(c)) {
      std::size_t start = i;
      while (i < n && (word_char(s[i]) || (s[i] == '-' && i + 1 < n && word_char(s[i + 1])))) ++i;
      std::string w = s.substr(start, i - start);
      out.push_back({w, tag_word(w)});
      continue;
    }
    out.push_back({std::string(1, c), PosTag::kPunct});
    ++i;
  }
  return out;
}

namespace {

bool is_verb(PosTag t) { return t == PosTag::kVerb || t == PosTag::kVbn; }

HyponymMatch make_match(int type, const std::vector<Token>& tokens, std::size_t b, std::size_t e) {
  HyponymMatch m{type, b, e, {}};
  for (std::size_t k = b; k < e; ++k) m.capture += (k > b ? " " : "") + tokens[k].text;
  return m;
}

}  // namespace

std::optional<HyponymMatch> match_pattern(int type, const std::vector<Token>& t) {
  const std::size_t n = t.size();
  auto tag = [&](std::size_t k) { return k < n ? t[k].tag : PosTag::kPunct; };
  for (std::size_t i = 0; i < n; ++i) {
    switch (type) {
      case 1:
        if (tag(i) == PosTag::kPrep && tag(i + 1) == PosTag::kAdj && tag(i + 2) == PosTag::kNoun) {
          std::size_t b = i;
          while (b > 0 && t[b - 1].tag == PosTag::kNoun) --b;
          return make_match(1, t, b, i + 3);
        }
        break;
      case 2:
        if (tag(i) == PosTag::kNoun && tag(i + 1) == PosTag::kCard) return make_match(2, t, i, i + 2);
        break;
      case 3:
        if (tag(i) == PosTag::kConj && is_verb(tag(i + 1)) &&
            (tag(i + 2) == PosTag::kAdj || tag(i + 2) == PosTag::kAdjNum) && tag(i + 3) == PosTag::kNoun)
          return make_match(3, t, i, i + 4);
        break;
      case 4:
        if (tag(i) == PosTag::kVerb && tag(i + 1) == PosTag::kAdv && tag(i + 2) == PosTag::kVbn)
          return make_match(4, t, i, i + 3);
        break;
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<HyponymMatch> classify(const std::string& message) {
  auto tokens = tag_message(message);
  for (int type = 1; type <= 4; ++type)
    if (auto m = match_pattern(type, tokens)) return m;
  return std::nullopt;
}

std::string normalize_message(const std::string& message) {
  static const std::regex kHex("0x[0-9a-fA-F]+");
  static const std::regex kTime(R"(\b\d+(\.\d+)?\s*(ms|us|s|sec|secs|seconds)\b)");
  static const std::regex kSpace(R"(\s+)");
  std::string s = std::regex_replace(message, kHex, "0x?");
  s = std::regex_replace(s, kTime, "<time>");
  s = std::regex_replace(s, kSpace, " ");
  auto b = s.find_first_not_of(' ');
  auto e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------

double trigram_dice(const std::string& a, const std::string& b) {
  auto grams = [](const std::string& s) {
    std::string l;
    for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::set<std::string> g;
    if (l.size() < 3) {
      if (!l.empty()) g.insert(l);
      return g;
    }
    for (std::size_t i = 0; i + 3 <= l.size(); ++i) g.insert(l.substr(i, 3));
    return g;
  };
  auto ga = grams(a), gb = grams(b);
  if (ga.empty() || gb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : ga) common += gb.count(x);
  return 2.0 * static_cast<double>(common) / static_cast<double>(ga.size() + gb.size());
}

double TokenSimilarity::operator()(const std::string& a, const std::string& b) const {
  if (table_ && table_->dimension() > 0) {
    auto average = [&](const std::string& s) -> std::optional<std::vector<double>> {
      std::vector<double> sum(table_->dimension(), 0.0);
      int found = 0;
      for (const auto& stem : tokenize_and_stem(s)) {
        if (const auto* v = table_->lookup(stem)) {
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
          ++found;
        }
      }
      if (!found) return std::nullopt;
      return sum;
    };
    auto va = average(a), vb = average(b);
    if (va && vb) return cosine(*va, *vb);
  }
  return trigram_dice(a, b);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::int64_t> as_int(const Literal& l) {
  if (auto* i = std::get_if<std::int64_t>(&l)) return *i;
  return std::nullopt;
}

std::optional<double> as_num(const Literal& l) {
  if (auto* i = std::get_if<std::int64_t>(&l)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&l)) return *d;
  return std::nullopt;
}

RelationExpr cmp(RelOp op, int hole, const Literal& v) {
  return RelationExpr::make_binary(op, RelationExpr::make_hole(hole),
                                   RelationExpr::make_const(*literal_to_rel(v)));
}

RelationExpr conj(const std::vector<RelationExpr>& parts) {
  RelationExpr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = RelationExpr::make_binary(RelOp::kAnd, out, parts[i]);
  return out;
}

// Next value after v in the hole's domain (wrapping), or v + 1 for integers.
std::optional<Literal> next_value(const Hole& h, const Literal& v) {
  const auto& d = h.domain;
  auto it = std::find_if(d.begin(), d.end(), [&](const Literal& x) { return literal_equal(x, v); });
  if (it != d.end()) {
    std::size_t i = static_cast<std::size_t>(it - d.begin());
    for (std::size_t k = 1; k < d.size(); ++k) {
      const Literal& c = d[(i + k) % d.size()];
      if (!literal_equal(c, v)) return c;
    }
  }
  if (auto x = as_int(v)) return Literal{*x + 1};
  return std::nullopt;
}

std::optional<std::int64_t> parse_int(const Token& t) {
  if (t.tag != PosTag::kCard && t.tag != PosTag::kCardNeg) return std::nullopt;
  if (t.text.find('.') != std::string::npos) return std::nullopt;
  try {
    return std::stoll(t.text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Chain index named by a leading "name(): " in the message, else the target.
int blamed_call(const std::string& message, const Sketch& sketch) {
  static const std::regex kPrefix(R"(^\s*([A-Za-z_][A-Za-z0-9_.]*)\(\))");
  std::smatch m;
  if (std::regex_search(message, m, kPrefix)) {
    std::string name = m[1].str();
    for (std::size_t c = 0; c < sketch.chain.size(); ++c) {
      const std::string& api = sketch.chain[c].api;
      std::string short_name = api.substr(api.rfind('.') + 1);
      if (short_name == name || api == name) return static_cast<int>(c);
    }
  }
  return static_cast<int>(sketch.chain.size()) - 1;
}

std::vector<int> holes_of_call(const Sketch& sketch, int call) {
  std::vector<int> out;
  for (const auto& h : sketch.holes)
    if (h.call_index == call) out.push_back(h.id);
  return out;
}

void rank(std::vector<FaultHypothesis>& hs) {
  std::stable_sort(hs.begin(), hs.end(), [](const FaultHypothesis& a, const FaultHypothesis& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.holes.front() < b.holes.front();
  });
}

FaultHypothesis not_equal(int type, const Hole& h, const Literal& v, double score) {
  FaultHypothesis f;
  f.type = type;
  f.holes = {h.id};
  f.suspect_value = v;
  f.constraint = cmp(RelOp::kNe, h.id, v);
  if (auto nv = next_value(h, v)) f.mutation[h.id] = *nv;
  f.score = score;
  return f;
}

enum class Sign { kAny, kNegative, kNonPositive, kZero };

Sign sign_of_adjective(const std::string& w) {
  if (w == "negative") return Sign::kNegative;
  if (w == "non-positive" || w == "nonpositive") return Sign::kNonPositive;
  if (w == "zero-size" || w == "zero-sized" || w == "empty") return Sign::kZero;
  return Sign::kAny;
}

bool sign_matches(Sign s, double v) {
  switch (s) {
    case Sign::kNegative: return v < 0;
    case Sign::kNonPositive: return v <= 0;
    case Sign::kZero: return v == 0;
    case Sign::kAny: return true;
  }
  return true;
}

std::vector<FaultHypothesis> type1(const std::vector<Token>& tokens, const HyponymMatch& m, const Sketch& sketch,
                                   const std::vector<Literal>& values) {
  std::vector<FaultHypothesis> out;
  Sign sign = Sign::kAny;
  for (std::size_t k = m.begin; k < m.end; ++k)
    if (tokens[k].tag == PosTag::kAdj) sign = sign_of_adjective(tokens[k].text);
  if (sign == Sign::kAny) return out;

  std::set<std::int64_t> reported;
  for (const auto& t : tokens)
    if (auto v = parse_int(t)) reported.insert(*v);

  std::vector<int> suspects, reported_suspects;
  for (const auto& h : sketch.holes) {
    auto v = as_num(values[static_cast<std::size_t>(h.id - 1)]);
    if (!v || !sign_matches(sign, *v)) continue;
    suspects.push_back(h.id);
    if (reported.count(static_cast<std::int64_t>(*v))) reported_suspects.push_back(h.id);
  }
  for (int id : suspects) {
    const Hole& h = sketch.hole(id);
    const Literal& v = values[static_cast<std::size_t>(id - 1)];
    FaultHypothesis f;
    f.type = 1;
    f.holes = {id};
    f.suspect_value = v;
    f.score = std::count(reported_suspects.begin(), reported_suspects.end(), id) ? 1.0 : 0.5;
    bool integral = h.type == TypeTag::kInt;
    Literal zero = integral ? Literal{std::int64_t{0}} : Literal{0.0};
    Literal one = integral ? Literal{std::int64_t{1}} : Literal{1.0};
    switch (sign) {
      case Sign::kNegative:
        f.constraint = cmp(RelOp::kGe, id, zero);
        f.mutation[id] = zero;
        f.refinement = cmp(RelOp::kGt, id, zero);
        f.refinement_mutation[id] = one;
        break;
      case Sign::kNonPositive:
        f.constraint = cmp(RelOp::kGt, id, zero);
        f.mutation[id] = one;
        break;
      default:
        f = not_equal(1, h, v, f.score);
        break;
    }
    out.push_back(std::move(f));
  }
  rank(out);
  return out;
}

std::vector<FaultHypothesis> type2(const std::string& message, const std::vector<Token>& tokens,
                                   const HyponymMatch& m, const Sketch& sketch, const std::vector<Literal>& values) {
  std::vector<FaultHypothesis> out;
  auto pos = parse_int(tokens[m.begin + 1]);
  if (!pos) return out;
  int call = blamed_call(message, sketch);
  const auto& slots = sketch.chain[static_cast<std::size_t>(call)].slots;

  // "argument <name> (position N)": a parameter of that name wins.
  const Slot* slot = nullptr;
  for (std::size_t k = 0; k + 1 < tokens.size() && !slot; ++k) {
    if (tokens[k].text != "argument") continue;
    for (const auto& s : slots)
      if (s.param == tokens[k + 1].text) slot = &s;
  }
  // Otherwise position 1 is the data argument and position N the (N-1)th parameter.
  if (!slot && *pos >= 2 && static_cast<std::size_t>(*pos - 2) < slots.size())
    slot = &slots[static_cast<std::size_t>(*pos - 2)];
  if (!slot) return out;
  for (int id : slot->holes)
    out.push_back(not_equal(2, sketch.hole(id), values[static_cast<std::size_t>(id - 1)], 1.0));
  return out;
}

std::vector<FaultHypothesis> type3(const std::vector<Token>& tokens, const HyponymMatch& m, const Sketch& sketch,
                                   const std::vector<Literal>& values, const TokenSimilarity& sim) {
  std::vector<FaultHypothesis> out;
  auto value_of = [&](int id) { return values[static_cast<std::size_t>(id - 1)]; };

  // "... in range [lo, hi], but got <adj> dim <v> ..."
  std::optional<std::int64_t> lo, hi, offending;
  for (std::size_t k = 0; k + 5 < tokens.size(); ++k) {
    if (tokens[k].text == "range" && tokens[k + 1].text == "[" && tokens[k + 3].text == "," &&
        tokens[k + 5].text == "]") {
      lo = parse_int(tokens[k + 2]);
      hi = parse_int(tokens[k + 4]);
      break;
    }
  }
  for (std::size_t k = m.end; k < tokens.size() && !offending; ++k) offending = parse_int(tokens[k]);

  if (lo && hi && offending) {
    std::set<int> calls_done;
    for (const auto& h : sketch.holes) {
      auto v = as_int(value_of(h.id));
      if (!v || *v != *offending) continue;
      if (h.reshaping) {
        if (!calls_done.insert(h.call_index).second) continue;
        // Every dim of the reshaping call must lie in the range.
        FaultHypothesis f;
        f.type = 3;
        f.suspect_value = *offending;
        std::vector<RelationExpr> parts;
        for (int id : holes_of_call(sketch, h.call_index)) {
          f.holes.push_back(id);
          parts.push_back(cmp(RelOp::kGe, id, Literal{*lo}));
          parts.push_back(cmp(RelOp::kLe, id, Literal{*hi}));
          auto cur = as_int(value_of(id));
          if (cur && (*cur < *lo || *cur > *hi)) f.mutation[id] = Literal{*lo};
        }
        f.constraint = conj(parts);
        f.score = 1.0;
        out.push_back(std::move(f));
      } else {
        FaultHypothesis f;
        f.type = 3;
        f.holes = {h.id};
        f.suspect_value = *offending;
        f.constraint = conj({cmp(RelOp::kGe, h.id, Literal{*lo}), cmp(RelOp::kLe, h.id, Literal{*hi})});
        f.mutation[h.id] = Literal{*lo};
        f.score = sim("dim", h.param);
        out.push_back(std::move(f));
      }
    }
    rank(out);
    return out;
  }

  bool duplicate = false;
  for (std::size_t k = m.begin; k < m.end; ++k) duplicate = duplicate || tokens[k].text == "duplicate";
  if (duplicate) {
    // Calls named in the message ("... for permute ..."), else every call.
    std::set<std::size_t> named;
    for (std::size_t c = 0; c < sketch.chain.size(); ++c) {
      const std::string& api = sketch.chain[c].api;
      std::string short_name = api.substr(api.rfind('.') + 1);
      for (auto& ch : short_name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      for (const auto& t : tokens)
        if (t.text == short_name) named.insert(c);
    }
    for (std::size_t c = 0; c < sketch.chain.size(); ++c) {
      if (!named.empty() && !named.count(c)) continue;
      auto ids = holes_of_call(sketch, static_cast<int>(c));
      std::set<std::int64_t> seen;
      bool dup = false;
      for (int id : ids)
        if (auto v = as_int(value_of(id)); v && !seen.insert(*v).second) dup = true;
      if (!dup) continue;
      FaultHypothesis f;
      f.type = 3;
      f.holes = ids;
      f.suspect_value = value_of(ids.front());
      std::vector<RelationExpr> parts;
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          parts.push_back(RelationExpr::make_binary(RelOp::kNe, RelationExpr::make_hole(ids[a]),
                                                    RelationExpr::make_hole(ids[b])));
      f.constraint = conj(parts);
      std::set<std::int64_t> used;
      for (int id : ids) {
        auto v = as_int(value_of(id));
        if (v && used.insert(*v).second) continue;
        std::int64_t repl = 0;
        while (used.count(repl)) ++repl;
        used.insert(repl);
        f.mutation[id] = Literal{repl};
      }
      f.score = 1.0;
      out.push_back(std::move(f));
    }
    return out;
  }

  // "Expected N-word ..." names the value a parameter was given.
  for (const auto& t : tokens) {
    if (t.tag != PosTag::kAdjNum) continue;
    auto dash = t.text.find('-');
    std::int64_t n = std::stoll(t.text.substr(0, dash));
    std::string word = t.text.substr(dash + 1);
    for (const auto& h : sketch.holes) {
      auto v = as_int(value_of(h.id));
      if (v && *v == n) out.push_back(not_equal(3, h, value_of(h.id), sim(word, h.param)));
    }
    break;
  }
  rank(out);
  return out;
}

std::vector<FaultHypothesis> type4(const std::vector<Token>& tokens, const HyponymMatch& m, const Sketch& sketch,
                                   const std::vector<Literal>& values, const TokenSimilarity& sim) {
  std::vector<FaultHypothesis> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k < m.begin; ++k)
    if (tokens[k].text == ":") start = k + 1;
  Sign sign = Sign::kAny;
  std::vector<std::string> nouns;
  std::set<std::string> quoted;
  for (std::size_t k = start; k < m.begin; ++k) {
    const auto& t = tokens[k];
    if (t.tag == PosTag::kAdj && sign == Sign::kAny) sign = sign_of_adjective(t.text);
    if (t.tag == PosTag::kNoun) nouns.push_back(t.text);
    if (t.text == "'" && k + 2 < m.begin && tokens[k + 2].text == "'") {
      quoted.insert(tokens[k + 1].text);
      k += 2;
    }
  }
  auto score = [&](const Hole& h) {
    double best = 0.0;
    for (const auto& n : nouns) best = std::max(best, sim(n, h.param));
    return best;
  };
  for (const auto& h : sketch.holes) {
    const Literal& v = values[static_cast<std::size_t>(h.id - 1)];
    if (!quoted.empty()) {
      auto* s = std::get_if<std::string>(&v);
      std::string lower;
      if (s)
        for (char c : *s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (!s || !quoted.count(lower)) continue;
    } else if (sign != Sign::kAny) {
      auto n = as_num(v);
      if (!n || !sign_matches(sign, *n)) continue;
    }
    out.push_back(not_equal(4, h, v, score(h)));
  }
  rank(out);
  return out;
}

}  // namespace

std::vector<FaultHypothesis> hypothesize(const std::string& message, const HyponymMatch& match, const Sketch& sketch,
                                         const std::vector<Literal>& values, const TokenSimilarity& similarity) {
  if (values.size() != sketch.holes.size() || sketch.holes.empty()) return {};
  auto tokens = tag_message(message);
  std::vector<FaultHypothesis> out;
  switch (match.type) {
    case 1: out = type1(tokens, match, sketch, values); break;
    case 2: out = type2(message, tokens, match, sketch, values); break;
    case 3: out = type3(tokens, match, sketch, values, similarity); break;
    case 4: out = type4(tokens, match, sketch, values, similarity); break;
    default: break;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const FaultHypothesis& f) { return f.mutation.empty(); }),
            out.end());
  return out;
}

ProbeOutcome probe(const FaultHypothesis& hypothesis, const std::vector<Literal>& values,
                   const std::string& original_message,
                   const std::function<EvalResult(const std::vector<Literal>&)>& run) {
  ProbeOutcome out;
  auto mutate = [&](const std::map<int, Literal>& m) {
    std::vector<Literal> v = values;
    for (const auto& [id, lit] : m) v[static_cast<std::size_t>(id - 1)] = lit;
    return v;
  };
  const std::string original = normalize_message(original_message);
  EvalResult first = run(mutate(hypothesis.mutation));
  out.evaluations = 1;
  if (first.status == EvalStatus::kError && normalize_message(first.message) == original) return out;

  out.status = ProbeStatus::kConfirmed;
  out.constraint = hypothesis.constraint;
  if (first.status == EvalStatus::kError && hypothesis.refinement) {
    EvalResult second = run(mutate(hypothesis.refinement_mutation));
    out.evaluations = 2;
    if (second.status != EvalStatus::kError ||
        normalize_message(second.message) != normalize_message(first.message)) {
      out.constraint = *hypothesis.refinement;
      out.refined = true;
    }
  }
  return out;
}

}  // namespace apimorph
