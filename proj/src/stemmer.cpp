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

#include "stemmer.hpp"

#include <cctype>
#include <utility>

namespace apimorph {

namespace {

// Works on a mutable buffer `b` holding the word; `k` is the length of the
// current stem candidate after a suffix has been matched.
class Porter {
 public:
  explicit Porter(std::string word) : b_(std::move(word)) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_;
  }

 private:
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !consonant(i - 1);
      default: return true;
    }
  }

  // Measure of b_[0, len): number of VC sequences.
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // consonant-vowel-consonant ending where the last consonant is not w, x, y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view s) const {
    return b_.size() >= s.size() && b_.compare(b_.size() - s.size(), s.size(), s) == 0;
  }

  std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void replace(std::string_view suffix, std::string_view with) {
    b_.resize(b_.size() - suffix.size());
    b_ += with;
  }

  // Applies the rule with the longest matching suffix if `cond` holds for it.
  template <typename Cond>
  bool apply_longest(std::initializer_list<std::pair<std::string_view, std::string_view>> rules,
                     Cond cond) {
    const std::pair<std::string_view, std::string_view>* best = nullptr;
    for (const auto& r : rules) {
      if (ends_with(r.first) && (!best || r.first.size() > best->first.size())) best = &r;
    }
    if (!best) return false;
    if (!cond(stem_len(best->first), best->first)) return false;
    replace(best->first, best->second);
    return true;
  }

  void step1a() {
    apply_longest({{"sses", "ss"}, {"ies", "i"}, {"ss", "ss"}, {"s", ""}},
                  [](std::size_t, std::string_view) { return true; });
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(stem_len("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool removed = false;
    for (std::string_view suf : {std::string_view("ed"), std::string_view("ing")}) {
      if (ends_with(suf) && has_vowel(stem_len(suf))) {
        replace(suf, "");
        removed = true;
        break;
      }
    }
    if (!removed) return;
    if (ends_with("at")) {
      b_ += 'e';
    } else if (ends_with("bl")) {
      b_ += 'e';
    } else if (ends_with("iz")) {
      b_ += 'e';
    } else if (double_consonant(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
      b_ += 'e';
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  void step2() {
    apply_longest({{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
                   {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
                   {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
                   {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
                   {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}},
                  [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step3() {
    apply_longest({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                   {"ical", "ic"}, {"ful", ""}, {"ness", ""}},
                  [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step4() {
    apply_longest({{"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
                   {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
                   {"ent", ""},  {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
                   {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""}},
                  [this](std::size_t len, std::string_view suf) {
                    if (measure(len) <= 1) return false;
                    if (suf == "ion") return len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't');
                    return true;
                  });
  }

  void step5a() {
    if (!ends_with("e")) return;
    std::size_t len = b_.size() - 1;
    int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
  }

  void step5b() {
    if (measure(b_.size()) > 1 && double_consonant(b_.size()) && b_.back() == 'l') b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Porter(std::string(word)).run(); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> tokenize_and_stem(std::string_view text) {
  std::vector<std::string> out = tokenize(text);
  for (auto& t : out) t = porter_stem(t);
  return out;
}

}  // namespace apimorph
