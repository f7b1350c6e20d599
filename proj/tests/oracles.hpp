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

// Brute-force reference implementations shared by the unit tests and the
// acceptance binary. They favour obviousness over speed and reuse nothing
// from the engine except the stemmer and the relation evaluator.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "corpus.hpp"
#include "sketch.hpp"
#include "stemmer.hpp"

namespace oracle {

struct Similarity {
  std::vector<std::vector<double>> reps;  // one per document, sources first
  std::vector<std::vector<double>> scores;
};

inline std::vector<std::string> stems(const std::string& text) { return apimorph::tokenize_and_stem(text); }

// Every document of both corpora, token counts recomputed from scratch,
// corpus totals by rescanning every document for every token.
inline Similarity similarity(const std::vector<std::string>& source, const std::vector<std::string>& target,
                             const std::map<std::string, std::vector<double>>* raw_words, std::size_t dim) {
  std::vector<std::string> all = source;
  all.insert(all.end(), target.begin(), target.end());
  std::vector<std::vector<std::string>> toks;
  for (const auto& d : all) toks.push_back(stems(d));

  std::vector<std::string> vocab;
  for (const auto& t : toks)
    for (const auto& s : t) {
      bool seen = false;
      for (const auto& v : vocab) seen = seen || v == s;
      if (!seen) vocab.push_back(s);
    }

  auto count_in = [](const std::vector<std::string>& doc, const std::string& s) {
    int n = 0;
    for (const auto& t : doc) n += t == s;
    return n;
  };

  Similarity out;
  for (const auto& doc : toks) {
    std::vector<double> weights(vocab.size(), 0.0);
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      int here = count_in(doc, vocab[j]);
      if (!here) continue;
      int total = 0;
      for (const auto& other : toks) total += count_in(other, vocab[j]);
      weights[j] = static_cast<double>(here) / total;
    }
    if (!raw_words) {
      out.reps.push_back(weights);
      continue;
    }
    std::vector<double> e(dim, 0.0);
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      if (weights[j] == 0.0) continue;
      // Average of every raw word that stems to this token.
      std::vector<double> avg(dim, 0.0);
      int n = 0;
      for (const auto& [word, vec] : *raw_words) {
        if (apimorph::porter_stem(word) != vocab[j]) continue;
        for (std::size_t d = 0; d < dim; ++d) avg[d] += vec[d];
        ++n;
      }
      if (!n) continue;
      for (std::size_t d = 0; d < dim; ++d) e[d] += weights[j] * (avg[d] / n);
    }
    out.reps.push_back(e);
  }

  for (std::size_t i = 0; i < source.size(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < target.size(); ++j) {
      const auto& a = out.reps[i];
      const auto& b = out.reps[source.size() + j];
      long double dot = 0, na = 0, nb = 0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        dot += static_cast<long double>(a[k]) * b[k];
        na += static_cast<long double>(a[k]) * a[k];
        nb += static_cast<long double>(b[k]) * b[k];
      }
      row.push_back(na == 0 || nb == 0 ? 0.0 : static_cast<double>(dot / std::sqrt(na * nb)));
    }
    out.scores.push_back(row);
  }
  return out;
}

// Random corpus over a small word pool; descriptions share words so that
// scores are non-trivial.
inline std::vector<std::string> random_descriptions(std::mt19937_64& rng, std::size_t n,
                                                    const std::vector<std::string>& pool) {
  std::vector<std::string> out;
  std::uniform_int_distribution<std::size_t> len(2, 9), pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::string d;
    std::size_t k = len(rng);
    for (std::size_t w = 0; w < k; ++w) d += (w ? " " : "") + pool[pick(rng)];
    out.push_back(d);
  }
  return out;
}

inline apimorph::DocCorpus corpus_of(const std::string& lib, const std::vector<std::string>& descriptions) {
  apimorph::DocCorpus c;
  c.library_id = lib;
  c.language_id = "python";
  for (std::size_t i = 0; i < descriptions.size(); ++i) {
    apimorph::ApiEntry e;
    e.qualified_name = lib + ".api" + (i < 10 ? "0" : "") + std::to_string(i);
    e.description = descriptions[i];
    c.entries.push_back(e);
  }
  return c;
}

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> pool = {
      "apply", "applies", "layer", "layers", "tensor", "tensors", "convolution", "pooling", "average",
      "maximum", "element", "elements", "rows", "row", "table", "filter", "filters", "sort", "sorted",
      "scale", "shift", "linear", "dense", "input", "output", "channel", "channels", "kernel", "stride",
      "padding", "returns", "first", "last", "remove", "removes", "final", "sum", "over", "axis"};
  return pool;
}

// ---------------------------------------------------------------------------
// Enumeration: every tuple of domain indices in lexicographic order, hole 1
// most significant, filtered by every constraint.

inline std::vector<apimorph::Assignment> exhaustive(const apimorph::Sketch& sketch,
                                                    const apimorph::ConstraintSet& cs) {
  std::vector<apimorph::Assignment> out;
  const std::size_t n = sketch.holes.size();
  for (const auto& h : sketch.holes)
    if (h.domain.empty()) return out;
  apimorph::Assignment a(n, 0);
  while (true) {
    auto values = apimorph::assignment_values(sketch, a);
    bool ok = true;
    for (const auto& c : cs.constraints()) ok = ok && apimorph::satisfies(c, values);
    if (ok) out.push_back(a);
    // Odometer increment, last hole fastest.
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++a[k] < sketch.holes[k].domain.size()) break;
      a[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

struct EnumInstance {
  apimorph::Sketch sketch;
  apimorph::ConstraintSet constraints;
  std::uint64_t domain_product = 1;
};

// Random sketch of 1..6 int holes with domain product at most `max_product`
// and 0..5 constraints from a fixed template family.
inline EnumInstance random_enum_instance(std::mt19937_64& rng, std::uint64_t max_product = 100000) {
  using apimorph::RelationExpr;
  using apimorph::RelOp;
  EnumInstance inst;
  std::uniform_int_distribution<int> holes_d(1, 6), dom_d(1, 12), val_d(-5, 10), cons_d(0, 5), tmpl_d(0, 6);
  int n = holes_d(rng);
  for (int i = 0; i < n; ++i) {
    int size = dom_d(rng);
    while (size > 1 && inst.domain_product * static_cast<std::uint64_t>(size) > max_product) --size;
    apimorph::Hole h;
    h.id = i + 1;
    h.param = "p" + std::to_string(i);
    std::vector<std::int64_t> vals;
    while (static_cast<int>(vals.size()) < size) {
      std::int64_t v = val_d(rng);
      bool dup = false;
      for (auto x : vals) dup = dup || x == v;
      if (!dup) vals.push_back(v);
    }
    for (auto v : vals) h.domain.emplace_back(v);
    inst.domain_product *= static_cast<std::uint64_t>(size);
    inst.sketch.holes.push_back(h);
  }
  apimorph::CallTemplate t;
  t.api = "lib.f";
  for (const auto& h : inst.sketch.holes) t.slots.push_back({h.param, false, {h.id}});
  inst.sketch.chain.push_back(t);

  std::vector<std::pair<int, apimorph::TypeTag>> typing;
  for (const auto& h : inst.sketch.holes) typing.emplace_back(h.id, apimorph::TypeTag::kInt);
  inst.constraints = apimorph::ConstraintSet(typing);
  std::uniform_int_distribution<int> hole_pick(1, n);
  auto H = [](int id) { return RelationExpr::make_hole(id); };
  auto C = [](std::int64_t v) { return RelationExpr::make_const(v); };
  int m = cons_d(rng);
  for (int k = 0; k < m; ++k) {
    int a = hole_pick(rng), b = hole_pick(rng);
    std::int64_t c = val_d(rng);
    RelationExpr e;
    switch (tmpl_d(rng)) {
      case 0: e = RelationExpr::make_binary(RelOp::kLt, H(a), H(b)); break;
      case 1: e = RelationExpr::make_binary(RelOp::kNe, H(a), C(c)); break;
      case 2: e = RelationExpr::make_binary(RelOp::kGe, RelationExpr::make_binary(RelOp::kAdd, H(a), H(b)), C(c)); break;
      case 3: e = RelationExpr::make_binary(RelOp::kLe, RelationExpr::make_binary(RelOp::kMul, H(a), H(b)), C(c * 3)); break;
      case 4:
        e = RelationExpr::make_binary(RelOp::kOr, RelationExpr::make_binary(RelOp::kEq, H(a), C(c)),
                                      RelationExpr::make_binary(RelOp::kGt, H(b), C(0)));
        break;
      case 5: e = RelationExpr::make_binary(RelOp::kEq, RelationExpr::make_binary(RelOp::kSub, H(a), H(b)), C(c % 3)); break;
      default: {
        int d = hole_pick(rng);
        e = RelationExpr::make_binary(
            RelOp::kAnd, RelationExpr::make_binary(RelOp::kLe, H(a), H(d)),
            RelationExpr::make_binary(RelOp::kNe, RelationExpr::make_binary(RelOp::kDiv, H(d), C(2)), C(c % 4)));
      }
    }
    inst.constraints = inst.constraints.with({e, apimorph::Provenance::kSpec});
  }
  return inst;
}

}  // namespace oracle
