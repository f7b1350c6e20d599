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

#include "matching.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"
#include "stemmer.hpp"

namespace apimorph {

TokenVector make_token_vector(const std::string& doc_id, const std::string& description) {
  TokenVector tv;
  tv.doc_id = doc_id;
  for (const auto& t : tokenize_and_stem(description)) ++tv.counts[t];
  return tv;
}

Vocabulary Vocabulary::build(const std::vector<TokenVector>& docs) {
  std::map<std::string, std::pair<int, int>> freq;  // token -> (total, docs)
  for (const auto& d : docs) {
    for (const auto& [tok, n] : d.counts) {
      auto& f = freq[tok];
      f.first += n;
      f.second += 1;
    }
  }
  Vocabulary v;
  v.document_count_ = docs.size();
  for (const auto& [tok, f] : freq) {
    v.index_[tok] = v.tokens_.size();
    v.tokens_.push_back(tok);
    v.corpus_frequency_.push_back(f.first);
    v.document_frequency_.push_back(f.second);
  }
  return v;
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingTable::add_word(const std::string& word, const std::vector<double>& vec) {
  if (dimension_ == 0) dimension_ = vec.size();
  if (vec.size() != dimension_)
    throw Error(ErrorKind::kValidation, "embedding for '" + word + "' has " +
                                            std::to_string(vec.size()) + " components, expected " +
                                            std::to_string(dimension_));
  std::string stem = porter_stem(word);
  auto& sum = sums_[stem];
  if (sum.empty()) sum.assign(dimension_, 0.0);
  for (std::size_t i = 0; i < dimension_; ++i) sum[i] += vec[i];
  int n = ++counts_[stem];
  auto& avg = vectors_[stem];
  avg.resize(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) avg[i] = sum[i] / n;
}

const std::vector<double>* EmbeddingTable::lookup(const std::string& stem) const {
  auto it = vectors_.find(stem);
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open embeddings file '" + path + "'");
  EmbeddingTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word)) continue;
    std::vector<double> vec;
    std::string tok;
    while (ss >> tok) {
      try {
        vec.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kValidation,
                    path + ":" + std::to_string(lineno) + ": bad float '" + tok + "'");
      }
    }
    if (vec.empty())
      throw Error(ErrorKind::kValidation, path + ":" + std::to_string(lineno) + ": no components");
    for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    table.add_word(word, vec);
  }
  return table;
}

const char* to_string(MatchMode m) {
  return m == MatchMode::kTfidf ? "tfidf" : "tfidf-embedding";
}

MatchMode parse_match_mode(const std::string& s) {
  if (s == "tfidf") return MatchMode::kTfidf;
  if (s == "tfidf-embedding" || s == "tfidf_embedding") return MatchMode::kTfidfEmbedding;
  throw Error(ErrorKind::kUsage, "unknown matching mode '" + s + "'");
}

std::vector<double> tfidf_vector(const TokenVector& doc, const Vocabulary& vocab,
                                 Weighting weighting) {
  std::vector<double> out(vocab.size(), 0.0);
  for (const auto& [tok, n] : doc.counts) {
    auto j = vocab.index_of(tok);
    if (!j)
      throw Error(ErrorKind::kConsistency,
                  "token '" + tok + "' of " + doc.doc_id + " is not in the vocabulary");
    if (weighting == Weighting::kCorpusFrequency) {
      out[*j] = static_cast<double>(n) / vocab.corpus_frequency(*j);
    } else {
      out[*j] = n * std::log(static_cast<double>(vocab.document_count()) /
                             vocab.document_frequency(*j));
    }
  }
  return out;
}

std::vector<double> embed_sentence(const TokenVector& doc, const Vocabulary& vocab,
                                   const EmbeddingTable& table, Weighting weighting) {
  std::vector<double> weights = tfidf_vector(doc, vocab, weighting);
  std::vector<double> out(table.dimension(), 0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0.0) continue;
    const auto* w = table.lookup(vocab.tokens()[j]);
    if (!w) continue;
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += weights[j] * (*w)[d];
  }
  return out;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::kValidation, "cosine of vectors with different lengths");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

std::optional<std::size_t> SimilarityMatrix::source_index(const std::string& id) const {
  for (std::size_t i = 0; i < source_ids.size(); ++i)
    if (source_ids[i] == id) return i;
  return std::nullopt;
}

SimilarityMatrix build_similarity(const DocCorpus& source, const DocCorpus& target, MatchMode mode,
                                  const EmbeddingTable* table, Weighting weighting) {
  if (source.entries.empty() || target.entries.empty())
    throw Error(ErrorKind::kValidation, "cannot match against an empty corpus");
  if (mode == MatchMode::kTfidfEmbedding && !table)
    throw Error(ErrorKind::kUsage, "tfidf-embedding mode needs an embedding table");

  std::vector<TokenVector> docs;
  for (const auto& e : source.entries) docs.push_back(make_token_vector(e.qualified_name, e.description));
  for (const auto& e : target.entries) docs.push_back(make_token_vector(e.qualified_name, e.description));
  Vocabulary vocab = Vocabulary::build(docs);

  std::vector<std::vector<double>> reps;
  reps.reserve(docs.size());
  for (const auto& d : docs) {
    reps.push_back(mode == MatchMode::kTfidf ? tfidf_vector(d, vocab, weighting)
                                             : embed_sentence(d, vocab, *table, weighting));
  }

  SimilarityMatrix m;
  for (const auto& e : source.entries) m.source_ids.push_back(e.qualified_name);
  for (const auto& e : target.entries) m.target_ids.push_back(e.qualified_name);
  const std::size_t ns = source.entries.size(), nt = target.entries.size();
  m.scores.resize(ns * nt);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) m.scores[i * nt + j] = cosine(reps[i], reps[ns + j]);
  return m;
}

std::vector<std::pair<std::string, double>> rank_targets(const SimilarityMatrix& matrix,
                                                         const std::string& source_api,
                                                         std::size_t top_k) {
  auto i = matrix.source_index(source_api);
  if (!i) throw Error(ErrorKind::kLookup, "source API '" + source_api + "' is not in the similarity matrix");
  std::vector<std::size_t> order(matrix.target_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = matrix.at(*i, a), sb = matrix.at(*i, b);
    if (sa != sb) return sa > sb;
    return matrix.target_ids[a] < matrix.target_ids[b];
  });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t k = 0; k < order.size() && k < top_k; ++k)
    out.emplace_back(matrix.target_ids[order[k]], matrix.at(*i, order[k]));
  return out;
}

}  // namespace apimorph
