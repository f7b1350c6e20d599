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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "errmsg.hpp"
#include "matching.hpp"
#include "oracles.hpp"

using namespace apimorph;
namespace fs = std::filesystem;

namespace {

const std::string kMock = std::string(APIMORPH_DATA_DIR) + "/mock";
const std::string kCli = APIMORPH_CLI;

// Pinned tolerances and limits.
constexpr double kMatchTolerance = 1e-12;
constexpr double kMatchSeconds = 1.0;
constexpr int kEnumInstances = 50;
constexpr std::uint64_t kEnumMaxProduct = 100000;
constexpr double kEnumSeconds = 30.0;
constexpr int kMinMigrated = 9;
constexpr int kMinPermute = 3;
constexpr double kEndToEndSeconds = 120.0;
constexpr double kLearningRatio = 2.0;
constexpr double kSpecRatio = 5.0;

const char* const kBenchmarks[] = {"01_affine",       "02_conv_relu",   "03_gap_dense", "04_gmp",
                                   "05_shift_gap",    "06_onehot",      "07_table_filter",
                                   "08_table_sort",   "09_drop_last",   "10_deep"};

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_root() {
  static const fs::path root = [] {
    auto p = fs::temp_directory_path() / "apimorph_acceptance";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

struct CliRun {
  int exit_code = -1;
  Json report;
  fs::path dir;
};

CliRun migrate(const std::string& dir, const std::string& extra, const std::string& out_name) {
  CliRun r;
  r.dir = scratch_root() / out_name;
  std::string b = kMock + "/" + dir;
  std::string mode = "tfidf";
  if (fs::exists(b + "/config.json")) mode = Json::parse(slurp(b + "/config.json")).value("mode", mode);
  std::string cmd = "'" + kCli + "' migrate --source-docs " + kMock + "/flow.json --target-docs " + kMock +
                    "/torchlet.json --embeddings " + kMock + "/embeddings.txt --mode " + mode + " --program " + b +
                    "/program.src --tests " + b + "/tests.json --output-dir " + r.dir.string() + " --no-timings " +
                    extra + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(r.dir / "report.json")) r.report = Json::parse(slurp(r.dir / "report.json"));
  return r;
}

std::uint64_t candidates(const CliRun& r) {
  if (!r.report.is_object()) return 0;
  return r.report["totals"]["candidates_tested"].get<std::uint64_t>();
}

std::string ratio_detail(std::uint64_t off, std::uint64_t on) {
  std::ostringstream os;
  os << off << " vs " << on << " candidates";
  if (on > 0) os << " (" << static_cast<double>(off) / static_cast<double>(on) << "x)";
  return os.str();
}

void matching_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  auto src = oracle::random_descriptions(rng, 12, oracle::word_pool());
  auto tgt = oracle::random_descriptions(rng, 12, oracle::word_pool());
  std::map<std::string, std::vector<double>> words;
  std::normal_distribution<double> nd;
  for (const auto& w : oracle::word_pool()) {
    std::vector<double> v(8);
    for (auto& x : v) x = nd(rng);
    words[w] = v;
  }
  EmbeddingTable table(8);
  for (const auto& [w, v] : words) table.add_word(w, v);
  auto S = oracle::corpus_of("s", src), T = oracle::corpus_of("t", tgt);
  auto plain = build_similarity(S, T, MatchMode::kTfidf);
  auto emb = build_similarity(S, T, MatchMode::kTfidfEmbedding, &table);
  auto o_plain = oracle::similarity(src, tgt, nullptr, 0);
  auto o_emb = oracle::similarity(src, tgt, &words, 8);
  double worst = 0;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      worst = std::max(worst, std::abs(plain.at(i, j) - o_plain.scores[i][j]));
      worst = std::max(worst, std::abs(emb.at(i, j) - o_emb.scores[i][j]));
    }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << "max |delta| " << worst << ", " << secs << " s";
  report(worst <= kMatchTolerance && secs < kMatchSeconds, "matching oracle 12x12", os.str());
}

std::size_t rank_of(const SimilarityMatrix& m, const std::string& src, const std::string& tgt) {
  auto ranked = rank_targets(m, src, m.target_ids.size());
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (ranked[i].first == tgt) return i + 1;
  return 0;
}

void ranking_sanity() {
  auto flow = load_corpus(kMock + "/flow.json");
  auto torch = load_corpus(kMock + "/torchlet.json");
  auto table = load_embeddings(kMock + "/embeddings.txt");
  auto plain = build_similarity(flow, torch, MatchMode::kTfidf);
  auto emb = build_similarity(flow, torch, MatchMode::kTfidfEmbedding, &table);
  bool ok = true;
  int pairs = 0;
  for (const auto& s : flow.entries)
    for (const auto& t : torch.entries)
      if (s.description == t.description) {
        ++pairs;
        ok = ok && rank_of(plain, s.qualified_name, t.qualified_name) == 1 &&
             rank_of(emb, s.qualified_name, t.qualified_name) == 1;
      }
  auto r_plain = rank_of(plain, "flow.array.drop_last", "torchlet.Tensor.trim_end");
  auto r_emb = rank_of(emb, "flow.array.drop_last", "torchlet.Tensor.trim_end");
  ok = ok && pairs > 0 && r_emb < r_plain;
  std::ostringstream os;
  os << pairs << " identical pairs at rank 1; drop_last->trim_end rank " << r_plain << " (tfidf) vs " << r_emb
     << " (tfidf-embedding)";
  report(ok, "ranking sanity", os.str());
}

void enumerator_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(31337);
  int equal = 0;
  std::size_t emitted = 0;
  for (int i = 0; i < kEnumInstances; ++i) {
    auto inst = oracle::random_enum_instance(rng, kEnumMaxProduct);
    Enumerator e(inst.sketch, inst.constraints, std::uint64_t{1} << 40);
    std::vector<Assignment> got;
    while (auto a = e.next()) got.push_back(*a);
    emitted += got.size();
    if (got == oracle::exhaustive(inst.sketch, inst.constraints)) ++equal;
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << equal << "/" << kEnumInstances << " instances equal the exhaustive filter (" << emitted << " assignments), "
     << secs << " s";
  report(equal == kEnumInstances && secs < kEnumSeconds, "enumerator soundness and completeness", os.str());
}

void end_to_end_and_determinism() {
  auto t0 = std::chrono::steady_clock::now();
  int migrated = 0, permute = 0;
  std::vector<std::string> failed;
  for (const char* b : kBenchmarks) {
    auto r = migrate(b, "", std::string("a_") + b);
    bool ok = r.exit_code == 0 && r.report.is_object() && r.report["complete"] == true &&
              r.report["tests_passed"] == true;
    if (!ok) {
      failed.push_back(b);
      continue;
    }
    ++migrated;
    for (const auto& l : r.report["lines"])
      if (l.value("sketch", "").find("torchlet.Tensor.permute") != std::string::npos) {
        ++permute;
        break;
      }
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << migrated << "/10 migrated, " << permute << " with permute, " << secs << " s";
  for (const auto& f : failed) os << "; failed " << f;
  report(migrated >= kMinMigrated && permute >= kMinPermute && secs < kEndToEndSeconds, "end-to-end mock migration",
         os.str());

  int identical = 0;
  for (const char* b : kBenchmarks) {
    auto r = migrate(b, "", std::string("b_") + b);
    auto a = scratch_root() / (std::string("a_") + b);
    if (slurp(a / "migrated.src") == slurp(r.dir / "migrated.src") &&
        slurp(a / "report.json") == slurp(r.dir / "report.json") && !slurp(a / "report.json").empty())
      ++identical;
  }
  report(identical == 10, "determinism", std::to_string(identical) + "/10 byte-identical program and report pairs");
}

void error_learning_ablation() {
  const std::string dir = "scenarios/error_learning";
  auto on = migrate(dir, "--no-spec-constraints", "el_on");
  auto off = migrate(dir, "--no-spec-constraints --no-error-learning", "el_off");
  bool ok = on.exit_code == 0 && off.exit_code == 0 && candidates(on) > 0 &&
            static_cast<double>(candidates(off)) >= kLearningRatio * static_cast<double>(candidates(on));
  report(ok, "error-learning ablation", ratio_detail(candidates(off), candidates(on)));
}

void spec_ablation() {
  const std::string dir = "scenarios/spec_ablation";
  auto on = migrate(dir, "", "sa_on");
  auto off = migrate(dir, "--no-spec-constraints", "sa_off");
  bool ok = on.exit_code == 0 && off.exit_code == 0 && candidates(on) > 0 &&
            static_cast<double>(candidates(off)) >= kSpecRatio * static_cast<double>(candidates(on));
  report(ok, "spec-constraint ablation", ratio_detail(candidates(off), candidates(on)));
}

void hyponym_classification() {
  const std::pair<const char*, int> examples[] = {
      {"Trying to create tensor with negative dimension -1: [-1, 100, -1, -1]", 1},
      {"embedding(): argument weight (position 1) must be Tensor, not int", 2},
      {"Expected 3-dimensional input for 3-dimensional weight [2, 2, 3], but got 4-dimensional input of size "
       "[100, 50, 40, 1] instead",
       3},
      {"non-positive stride is not supported", 4},
  };
  const char* near_misses[] = {"Trying to create tensor with dimension", "position -1 is invalid",
                               "but input",                              "is supported",
                               "got 4-dimensional input",                "not supported",
                               "argument weight must be Tensor",         "",
                               "but got input of size [2, 3]",           "tensor with negative"};
  int typed = 0, none = 0;
  for (const auto& [msg, type] : examples) {
    auto m = classify(msg);
    if (m && m->type == type) ++typed;
  }
  for (const char* msg : near_misses)
    if (!classify(msg)) ++none;
  report(typed == 4 && none == 10, "hyponym classification",
         std::to_string(typed) + "/4 examples typed, " + std::to_string(none) + "/10 near misses unclassified");
}

}  // namespace

int main() {
  try {
    matching_oracle();
    ranking_sanity();
    enumerator_oracle();
    end_to_end_and_determinism();
    error_learning_ablation();
    spec_ablation();
    hyponym_classification();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance harness: " << e.what() << std::endl;
    return 1;
  }
  fs::remove_all(scratch_root());
  return failures == 0 ? 0 : 1;
}
