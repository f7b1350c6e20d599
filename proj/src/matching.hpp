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

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace apimorph {

/// Bag of stemmed tokens for one API description.
struct TokenVector {
  std::string doc_id;
  std::map<std::string, int> counts;
};

TokenVector make_token_vector(const std::string& doc_id, const std::string& description);

/// Token list (sorted) plus the per-token frequency summed over every
/// document the vocabulary was built from.
class Vocabulary {
 public:
  static Vocabulary build(const std::vector<TokenVector>& docs);

  std::size_t size() const { return tokens_.size(); }
  std::size_t document_count() const { return document_count_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::size_t> index_of(const std::string& token) const;
  int corpus_frequency(std::size_t j) const { return corpus_frequency_[j]; }
  int document_frequency(std::size_t j) const { return document_frequency_[j]; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<int> corpus_frequency_;
  std::vector<int> document_frequency_;
  std::size_t document_count_ = 0;
};

/// Word vectors keyed by stem. Words that stem to the same token are averaged.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  /// Adds a raw word vector; throws kValidation on a length mismatch.
  void add_word(const std::string& word, const std::vector<double>& vec);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* lookup(const std::string& stem) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> sums_;
  std::unordered_map<std::string, int> counts_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// GloVe-style text file: token followed by `dimension` floats per line.
EmbeddingTable load_embeddings(const std::string& path);

enum class Weighting {
  kCorpusFrequency,  // x_j / sum over all documents of x_j
  kClassicIdf,       // x_j * log(m / df_j)
};

enum class MatchMode { kTfidf, kTfidfEmbedding };

const char* to_string(MatchMode m);
MatchMode parse_match_mode(const std::string& s);

std::vector<double> tfidf_vector(const TokenVector& doc, const Vocabulary& vocab,
                                 Weighting weighting = Weighting::kCorpusFrequency);

/// Weighted sum of word vectors, weights from tfidf_vector. Tokens missing
/// from the table contribute nothing.
std::vector<double> embed_sentence(const TokenVector& doc, const Vocabulary& vocab,
                                   const EmbeddingTable& table,
                                   Weighting weighting = Weighting::kCorpusFrequency);

/// a.b / (|a||b|); 0 when either vector is zero.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

struct SimilarityMatrix {
  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;
  std::vector<double> scores;  // row-major, |source| x |target|

  double at(std::size_t i, std::size_t j) const { return scores[i * target_ids.size() + j]; }
  std::optional<std::size_t> source_index(const std::string& id) const;
};

SimilarityMatrix build_similarity(const DocCorpus& source, const DocCorpus& target, MatchMode mode,
                                  const EmbeddingTable* table = nullptr,
                                  Weighting weighting = Weighting::kCorpusFrequency);

/// Descending by score, ties by target name; at most top_k entries.
std::vector<std::pair<std::string, double>> rank_targets(const SimilarityMatrix& matrix,
                                                         const std::string& source_api,
                                                         std::size_t top_k);

}  // namespace apimorph
