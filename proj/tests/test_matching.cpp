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
#include <fstream>
#include <random>
#include <string>

#include "error.hpp"
#include "matching.hpp"
#include "oracles.hpp"

using namespace apimorph;

namespace {

const std::string kMock = std::string(APIMORPH_DATA_DIR) + "/mock";

std::size_t rank_of(const SimilarityMatrix& m, const std::string& src, const std::string& tgt) {
  auto ranked = rank_targets(m, src, m.target_ids.size());
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (ranked[i].first == tgt) return i + 1;
  return 0;
}

std::map<std::string, std::vector<double>> random_words(std::mt19937_64& rng, std::size_t dim) {
  std::map<std::string, std::vector<double>> words;
  std::normal_distribution<double> nd;
  for (const auto& w : oracle::word_pool()) {
    if (w == "over" || w == "axis") continue;  // left out: tokens without vectors
    std::vector<double> v(dim);
    for (auto& x : v) x = nd(rng);
    words[w] = v;
  }
  return words;
}

}  // namespace

TEST_CASE("cosine of parallel, orthogonal and zero vectors") {
  CHECK(cosine({1, 2}, {2, 4}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine({1, 0}, {0, 3}) == 0.0);
  CHECK(cosine({1, 0}, {-2, 0}) == doctest::Approx(-1.0));
  CHECK(cosine({0, 0}, {1, 1}) == 0.0);
  CHECK_THROWS_AS(cosine({1}, {1, 2}), Error);
}

TEST_CASE("corpus-frequency weight of a token seen once here and ten times overall") {
  std::vector<TokenVector> docs{make_token_vector("a", "alpha beta")};
  for (int i = 0; i < 9; ++i) docs.push_back(make_token_vector("d" + std::to_string(i), "alpha"));
  Vocabulary v = Vocabulary::build(docs);
  auto w = tfidf_vector(docs[0], v);
  CHECK(w[*v.index_of("alpha")] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(w[*v.index_of("beta")] == 1.0);
}

TEST_CASE("each token's weights over all documents sum to one") {
  std::mt19937_64 rng(11);
  auto descs = oracle::random_descriptions(rng, 20, oracle::word_pool());
  std::vector<TokenVector> docs;
  for (std::size_t i = 0; i < descs.size(); ++i) docs.push_back(make_token_vector(std::to_string(i), descs[i]));
  Vocabulary v = Vocabulary::build(docs);
  std::vector<double> sums(v.size(), 0.0);
  for (const auto& d : docs) {
    auto w = tfidf_vector(d, v);
    for (std::size_t j = 0; j < w.size(); ++j) sums[j] += w[j];
  }
  for (double s : sums) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vocabulary is sorted and counts are consistent") {
  std::vector<TokenVector> docs{make_token_vector("a", "layer layers pool"), make_token_vector("b", "pool")};
  Vocabulary v = Vocabulary::build(docs);
  CHECK(v.tokens() == std::vector<std::string>{"layer", "pool"});
  CHECK(v.corpus_frequency(*v.index_of("layer")) == 2);
  CHECK(v.document_frequency(*v.index_of("pool")) == 2);
  CHECK(v.document_count() == 2);
  CHECK_FALSE(v.index_of("missing").has_value());
}

TEST_CASE("classic idf weighting") {
  std::vector<TokenVector> docs{make_token_vector("a", "alpha beta"), make_token_vector("b", "alpha")};
  Vocabulary v = Vocabulary::build(docs);
  auto w = tfidf_vector(docs[0], v, Weighting::kClassicIdf);
  CHECK(w[*v.index_of("alpha")] == 0.0);
  CHECK(w[*v.index_of("beta")] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("ties are broken by target name") {
  SimilarityMatrix m;
  m.source_ids = {"s"};
  m.target_ids = {"b", "a", "c"};
  m.scores = {0.9, 0.9, 0.1};
  auto r = rank_targets(m, "s", 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].first == "a");
  CHECK(r[1].first == "b");
  CHECK_THROWS_AS(rank_targets(m, "nope", 2), Error);
}

TEST_CASE("embedding table averages words sharing a stem") {
  EmbeddingTable t(2);
  t.add_word("layer", {1.0, 0.0});
  t.add_word("layers", {0.0, 1.0});
  const auto* v = t.lookup("layer");
  REQUIRE(v);
  CHECK((*v)[0] == 0.5);
  CHECK((*v)[1] == 0.5);
  CHECK(t.size() == 1);
  CHECK_THROWS_AS(t.add_word("pool", {1.0}), Error);
}

TEST_CASE("embedding file loading") {
  auto t = load_embeddings(kMock + "/embeddings.txt");
  CHECK(t.dimension() > 0);
  REQUIRE(t.lookup(porter_stem("removes")));
  CHECK(*t.lookup(porter_stem("removes")) == *t.lookup(porter_stem("deletes")));
  CHECK_THROWS_AS(load_embeddings("/nonexistent/emb.txt"), Error);

  std::string bad = "/tmp/apimorph_bad_emb.txt";
  std::ofstream(bad) << "word 1.0 x\n";
  CHECK_THROWS_AS(load_embeddings(bad), Error);
}

TEST_CASE("match mode parsing") {
  CHECK(parse_match_mode("tfidf") == MatchMode::kTfidf);
  CHECK(parse_match_mode("tfidf-embedding") == MatchMode::kTfidfEmbedding);
  CHECK_THROWS_AS(parse_match_mode("bm25"), Error);
}

TEST_CASE("similarity matrix agrees with the brute-force oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    std::mt19937_64 rng(seed);
    auto src = oracle::random_descriptions(rng, 12, oracle::word_pool());
    auto tgt = oracle::random_descriptions(rng, 12, oracle::word_pool());
    auto words = random_words(rng, 8);
    EmbeddingTable table(8);
    for (const auto& [w, v] : words) table.add_word(w, v);
    auto S = oracle::corpus_of("s", src), T = oracle::corpus_of("t", tgt);

    auto plain = build_similarity(S, T, MatchMode::kTfidf);
    auto emb = build_similarity(S, T, MatchMode::kTfidfEmbedding, &table);
    auto o_plain = oracle::similarity(src, tgt, nullptr, 0);
    auto o_emb = oracle::similarity(src, tgt, &words, 8);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 0; j < 12; ++j) {
        CAPTURE(seed);
        CHECK(std::abs(plain.at(i, j) - o_plain.scores[i][j]) <= 1e-12);
        CHECK(std::abs(emb.at(i, j) - o_emb.scores[i][j]) <= 1e-12);
      }
  }
}

TEST_CASE("scores are bounded and identical documents score one") {
  std::mt19937_64 rng(9);
  auto descs = oracle::random_descriptions(rng, 10, oracle::word_pool());
  auto m = build_similarity(oracle::corpus_of("s", descs), oracle::corpus_of("t", descs), MatchMode::kTfidf);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      CHECK(m.at(i, j) >= -1.0);
      CHECK(m.at(i, j) <= 1.0);
    }
    CHECK(m.at(i, i) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("build_similarity argument errors") {
  DocCorpus empty;
  auto one = oracle::corpus_of("t", {"apply layer"});
  CHECK_THROWS_AS(build_similarity(empty, one, MatchMode::kTfidf), Error);
  try {
    build_similarity(one, one, MatchMode::kTfidfEmbedding, nullptr);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUsage);
  }
}

TEST_CASE("ranking sanity on the mock libraries") {
  auto flow = load_corpus(kMock + "/flow.json");
  auto torch = load_corpus(kMock + "/torchlet.json");
  auto table = load_embeddings(kMock + "/embeddings.txt");
  auto plain = build_similarity(flow, torch, MatchMode::kTfidf);
  auto emb = build_similarity(flow, torch, MatchMode::kTfidfEmbedding, &table);

  CHECK(rank_of(plain, "flow.layers.ReLU", "torchlet.nn.ReLU") == 1);
  CHECK(rank_of(plain, "flow.frame.head", "torchlet.frame.DataFrame.head") == 1);
  CHECK(rank_of(emb, "flow.layers.ReLU", "torchlet.nn.ReLU") == 1);

  std::size_t r_plain = rank_of(plain, "flow.array.drop_last", "torchlet.Tensor.trim_end");
  std::size_t r_emb = rank_of(emb, "flow.array.drop_last", "torchlet.Tensor.trim_end");
  CHECK(r_emb < r_plain);
  CHECK(r_emb == 1);
}
