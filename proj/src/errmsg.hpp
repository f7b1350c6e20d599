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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "matching.hpp"
#include "runtime.hpp"
#include "sketch.hpp"

namespace apimorph {

/// Closed part-of-speech tag set used by the message tagger.
enum class PosTag {
  kNoun,
  kVerb,      // finite/auxiliary verbs: is, got, must, ...
  kVbn,       // past participles: supported, defined, expected, ...
  kVbg,       // gerunds: trying, pooling, ...
  kAdj,       // negative, non-positive, zero-size, duplicate, ...
  kAdjNum,    // numeric compounds: 4-dimensional, 3-channel
  kAdv,       // not, never, ...
  kPrep,
  kConj,      // coordinating conjunctions
  kCard,      // unsigned number
  kCardNeg,   // negative number
  kDet,
  kPunct,
};

const char* to_string(PosTag t);

struct Token {
  std::string text;  // lowercased
  PosTag tag = PosTag::kNoun;
};

std::vector<Token> tag_message(const std::string& message);

/// A recognised hyponym: type 1..4 and the tokens it spans.
struct HyponymMatch {
  int type = 0;
  std::size_t begin = 0, end = 0;  // token range [begin, end)
  std::string capture;             // tokens joined by single spaces
};

/// Pattern realizations over the tag sequence (punctuation breaks a match):
///   1: Noun* Prep Adj Noun   (the adjective must be a plain adjective)
///   2: Noun Card             (unsigned cardinal)
///   3: Conj Verb (Adj|AdjNum) Noun
///   4: Verb Adv Vbn
std::optional<HyponymMatch> match_pattern(int type, const std::vector<Token>& tokens);

/// First matching pattern in type order, or nullopt.
std::optional<HyponymMatch> classify(const std::string& message);

/// Strips run-specific text (hex addresses, timings) and collapses spaces.
std::string normalize_message(const std::string& message);

/// Name-to-name closeness used to localise faults. Character-trigram Dice
/// coefficient; cosine of averaged word vectors when a table is given and
/// knows both names.
class TokenSimilarity {
 public:
  explicit TokenSimilarity(const EmbeddingTable* table = nullptr) : table_(table) {}
  double operator()(const std::string& a, const std::string& b) const;

 private:
  const EmbeddingTable* table_;
};

double trigram_dice(const std::string& a, const std::string& b);

struct FaultHypothesis {
  int type = 0;
  std::vector<int> holes;
  Literal suspect_value;
  RelationExpr constraint;
  std::map<int, Literal> mutation;
  std::optional<RelationExpr> refinement;
  std::map<int, Literal> refinement_mutation;
  double score = 0.0;
};

/// Ranked fault hypotheses for a failing candidate given by `values` (one
/// literal per hole of `sketch`). Empty when no hole can be blamed.
std::vector<FaultHypothesis> hypothesize(const std::string& message, const HyponymMatch& match, const Sketch& sketch,
                                         const std::vector<Literal>& values, const TokenSimilarity& similarity);

enum class ProbeStatus { kConfirmed, kRejected };

struct ProbeOutcome {
  ProbeStatus status = ProbeStatus::kRejected;
  RelationExpr constraint;  // final constraint when confirmed
  int evaluations = 0;
  bool refined = false;
};

/// Re-runs the candidate with the hypothesis mutation. Unchanged message:
/// rejected. Pass, mismatch or a new message: confirmed; if the first probe
/// produced a new error and a refinement exists, one more probe decides
/// whether the tighter constraint is kept. At most two evaluations.
ProbeOutcome probe(const FaultHypothesis& hypothesis, const std::vector<Literal>& values,
                   const std::string& original_message,
                   const std::function<EvalResult(const std::vector<Literal>&)>& run);

}  // namespace apimorph
