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

#include "program.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace apimorph {

std::string CallSite::call_text() const {
  std::string s = callee + "(";
  bool first = true;
  auto sep = [&] {
    if (!first) s += ',';
    first = false;
  };
  if (explicit_input) {
    sep();
    s += data_input;
  }
  for (const auto& a : positional_args) {
    sep();
    s += literal_to_string(a);
  }
  for (const auto& [k, v] : keyword_args) {
    sep();
    s += k + "=" + literal_to_string(v);
  }
  return s + ")";
}

std::string CallSite::to_text() const { return binds + " = " + call_text(); }

std::vector<Literal> CallSite::flat_literals() const {
  std::vector<Literal> out;
  auto add = [&](const Literal& l) {
    if (auto* t = std::get_if<IntTuple>(&l)) {
      for (auto v : *t) out.emplace_back(v);
    } else {
      out.push_back(l);
    }
  };
  for (const auto& a : positional_args) add(a);
  for (const auto& kv : keyword_args) add(kv.second);
  return out;
}

std::string Program::to_text() const {
  std::string s = "inputs: ";
  for (std::size_t i = 0; i < input_vars.size(); ++i) s += (i ? ", " : "") + input_vars[i];
  s += "\n";
  for (const auto& l : lines) s += l.to_text() + "\n";
  return s;
}

Program Program::prefix(std::size_t count) const {
  Program p;
  p.input_vars = input_vars;
  p.lines.assign(lines.begin(), lines.begin() + std::min(count, lines.size()));
  return p;
}

namespace {

class LineParser {
 public:
  LineParser(const std::string& text, int lineno) : s_(text), lineno_(lineno) {}

  CallSite parse_call() {
    CallSite c;
    c.binds = ident();
    expect('=');
    c.callee = qualified();
    expect('(');
    skip();
    if (peek() != ')') {
      for (;;) {
        parse_arg(c);
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')');
    skip();
    if (pos_ != s_.size()) fail("trailing text '" + s_.substr(pos_) + "'");
    return c;
  }

  std::vector<std::string> parse_inputs() {
    std::vector<std::string> vars;
    skip();
    if (pos_ == s_.size()) return vars;
    for (;;) {
      vars.push_back(ident());
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    skip();
    if (pos_ != s_.size()) fail("bad inputs declaration");
    return vars;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::kSchema, "line " + std::to_string(lineno_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    skip();
    if (!ident_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::string qualified() {
    std::string name = ident();
    while (peek() == '.') {
      ++pos_;
      name += "." + ident();
    }
    return name;
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string t = s_.substr(start, pos_ - start);
    if (t.empty() || t == "-" || t == "+") fail("expected integer");
    return std::stoll(t);
  }

  Literal literal() {
    skip();
    char c = peek();
    for (const char* word : {"True", "true", "False", "false"}) {
      std::size_t n = std::strlen(word);
      if (s_.compare(pos_, n, word) == 0 && (pos_ + n >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + n])))) {
        pos_ += n;
        return word[0] == 'T' || word[0] == 't';
      }
    }
    if (c == '(') {
      ++pos_;
      IntTuple t;
      skip();
      if (peek() != ')') {
        for (;;) {
          t.push_back(integer());
          skip();
          if (peek() == ',') {
            ++pos_;
            skip();
            if (peek() == ')') break;
            continue;
          }
          break;
        }
      }
      expect(')');
      return t;
    }
    if (c == '"' || c == '\'') {
      ++pos_;
      std::string v;
      while (pos_ < s_.size() && s_[pos_] != c) {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
          ++pos_;
          char e = s_[pos_];
          v += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
          v += s_[pos_];
        }
        ++pos_;
      }
      if (pos_ >= s_.size()) fail("unterminated string");
      ++pos_;
      return v;
    }
    if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
              ((s_[pos_] == '-' || s_[pos_] == '+') && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
        ++pos_;
      std::string t = s_.substr(start, pos_ - start);
      bool is_float = t.find_first_of(".eE") != std::string::npos || t == "inf" || t == "-inf";
      try {
        std::size_t used = 0;
        if (is_float) {
          double d = std::stod(t, &used);
          if (used != t.size()) fail("bad number '" + t + "'");
          return d;
        }
        std::int64_t v = std::stoll(t, &used);
        if (used != t.size()) fail("bad number '" + t + "'");
        return v;
      } catch (const std::logic_error&) {
        fail("bad number '" + t + "'");
      }
    }
    fail("expected literal");
  }

  void parse_arg(CallSite& c) {
    skip();
    if (ident_start(peek())) {
      std::size_t save = pos_;
      std::string name = ident();
      skip();
      if (peek() == '=' && (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '=')) {
        ++pos_;
        c.keyword_args.emplace_back(name, literal());
        return;
      }
      if (name == "True" || name == "true") {
        positional(c, true);
        return;
      }
      if (name == "False" || name == "false") {
        positional(c, false);
        return;
      }
      (void)save;
      if (c.explicit_input || !c.positional_args.empty() || !c.keyword_args.empty())
        fail("variable '" + name + "' may only appear as the first argument");
      c.explicit_input = true;
      c.data_input = name;
      return;
    }
    positional(c, literal());
  }

  void positional(CallSite& c, Literal l) {
    if (!c.keyword_args.empty()) fail("positional argument after keyword argument");
    c.positional_args.push_back(std::move(l));
  }

  const std::string& s_;
  int lineno_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Program parse_program_syntax(const std::string& text) {
  Program p;
  bool have_inputs = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::set<std::string> defined;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("inputs:", 0) == 0) {
      if (have_inputs || !p.lines.empty())
        throw Error(ErrorKind::kSchema, "line " + std::to_string(lineno) + ": misplaced inputs declaration");
      std::string rest = line.substr(7);
      p.input_vars = LineParser(rest, lineno).parse_inputs();
      have_inputs = true;
      continue;
    }
    if (!have_inputs) {
      p.input_vars = {"x"};
      have_inputs = true;
    }
    if (defined.empty()) defined.insert(p.input_vars.begin(), p.input_vars.end());
    CallSite c = LineParser(line, lineno).parse_call();
    c.line_index = static_cast<int>(p.lines.size());
    if (!c.explicit_input) {
      if (p.lines.empty()) {
        if (p.input_vars.empty())
          throw Error(ErrorKind::kScoping, "line " + std::to_string(lineno) + ": no input variable to consume");
        c.data_input = p.input_vars.front();
      } else {
        c.data_input = p.lines.back().binds;
      }
    } else if (!defined.count(c.data_input)) {
      throw Error(ErrorKind::kScoping, "line " + std::to_string(lineno) + ": variable '" +
                                           c.data_input + "' used before definition");
    }
    if (!defined.insert(c.binds).second)
      throw Error(ErrorKind::kScoping, "line " + std::to_string(lineno) + ": variable '" + c.binds +
                                           "' is assigned twice");
    p.lines.push_back(std::move(c));
  }
  if (!have_inputs) p.input_vars = {"x"};
  return p;
}

std::map<std::string, Literal> bind_arguments(const CallSite& call, const ApiEntry& entry) {
  std::map<std::string, Literal> out;
  const std::string where = "line " + std::to_string(call.line_index + 1) + " (" + call.callee + ")";
  if (call.positional_args.size() > entry.params.size())
    throw Error(ErrorKind::kResolution, where + ": too many positional arguments");
  auto put = [&](const ParamSpec& p, const Literal& v) {
    if (!p.accepts(v))
      throw Error(ErrorKind::kResolution, where + ": argument '" + p.name + "' expects " +
                                              p.type_string() + ", got " + literal_to_string(v));
    Literal norm = v;
    if (p.type == TypeTag::kIntPair) {
      if (auto* i = std::get_if<std::int64_t>(&v)) norm = IntTuple{*i, *i};
    } else if (p.type == TypeTag::kFloat) {
      if (auto* i = std::get_if<std::int64_t>(&v)) norm = static_cast<double>(*i);
    }
    if (!out.emplace(p.name, norm).second)
      throw Error(ErrorKind::kResolution, where + ": argument '" + p.name + "' given twice");
  };
  for (std::size_t i = 0; i < call.positional_args.size(); ++i) put(entry.params[i], call.positional_args[i]);
  for (const auto& [k, v] : call.keyword_args) {
    const auto* p = entry.find_param(k);
    if (!p) throw Error(ErrorKind::kResolution, where + ": unknown argument '" + k + "'");
    put(*p, v);
  }
  for (const auto& p : entry.params) {
    if (out.count(p.name)) continue;
    if (p.default_value) {
      Literal d = *p.default_value;
      if (p.type == TypeTag::kIntPair)
        if (auto* i = std::get_if<std::int64_t>(&d)) d = IntTuple{*i, *i};
      out.emplace(p.name, d);
    } else if (p.required) {
      throw Error(ErrorKind::kResolution, where + ": missing required argument '" + p.name + "'");
    }
  }
  return out;
}

Program parse_program(const std::string& text, const DocCorpus& corpus) {
  Program p = parse_program_syntax(text);
  for (const auto& c : p.lines) {
    const ApiEntry* e = corpus.find(c.callee);
    if (!e)
      throw Error(ErrorKind::kResolution, "line " + std::to_string(c.line_index + 1) + ": unknown API '" +
                                              c.callee + "' in " + corpus.library_id);
    bind_arguments(c, *e);
  }
  return p;
}

Program load_program(const std::string& path, const DocCorpus& corpus) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open program file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str(), corpus);
}

std::vector<TestCase> tests_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("tests")) throw Error(ErrorKind::kSchema, "tests file needs a 'tests' array");
    arr = &j.at("tests");
  }
  if (!arr->is_array()) throw Error(ErrorKind::kSchema, "'tests' must be an array");
  std::vector<TestCase> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const auto& tj = (*arr)[i];
    if (!tj.contains("inputs") || !tj.contains("expected_output"))
      throw Error(ErrorKind::kSchema, "tests[" + std::to_string(i) + "] needs inputs and expected_output");
    TestCase t;
    t.id = tj.value("id", "t" + std::to_string(i));
    for (const auto& [name, v] : tj.at("inputs").items()) t.inputs.emplace(name, value_from_json(v));
    t.expected_output = value_from_json(tj.at("expected_output"));
    out.push_back(std::move(t));
  }
  return out;
}

Json tests_to_json(const std::vector<TestCase>& tests) {
  Json arr = Json::array();
  for (const auto& t : tests) {
    Json inputs = Json::object();
    for (const auto& [k, v] : t.inputs) inputs[k] = value_to_json(v);
    arr.push_back({{"id", t.id}, {"inputs", inputs}, {"expected_output", value_to_json(t.expected_output)}});
  }
  return {{"tests", arr}};
}

std::vector<TestCase> load_tests(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open tests file '" + path + "'");
  try {
    return tests_from_json(Json::parse(in));
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::kSchema, path + ": " + ex.what());
  }
}

}  // namespace apimorph
