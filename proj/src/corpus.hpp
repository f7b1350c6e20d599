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
#include <vector>

#include "relation.hpp"
#include "value.hpp"

namespace apimorph {

/// Closed parameter type vocabulary. Richer documentation types are
/// normalised onto these six when the corpus is authored.
enum class TypeTag { kInt, kFloat, kBool, kString, kIntPair, kEnum };

const char* to_string(TypeTag t);

struct ParamSpec {
  std::string name;
  TypeTag type = TypeTag::kInt;
  std::vector<std::string> enum_values;  // kEnum only
  bool required = true;
  std::optional<Literal> default_value;
  std::string description;

  /// "int", "enum(valid,same)", ...
  std::string type_string() const;
  bool accepts(const Literal& lit) const;
};

struct ApiEntry {
  std::string qualified_name;
  std::string description;
  std::vector<ParamSpec> params;
  std::vector<std::string> relation_texts;
  std::vector<RelationExpr> relations;  // parsed from relation_texts

  const ParamSpec* find_param(const std::string& name) const;
  int param_index(const std::string& name) const;
};

/// Documentation of one library. Immutable after load.
struct DocCorpus {
  std::string library_id;
  std::string language_id;
  std::vector<ApiEntry> entries;

  const ApiEntry* find(const std::string& qualified_name) const;
  const ApiEntry& at(const std::string& qualified_name) const;
};

DocCorpus load_corpus(const std::string& path);
DocCorpus corpus_from_json(const Json& j);
Json corpus_to_json(const DocCorpus& corpus);

/// Checks every corpus invariant; throws Error(kValidation) on the first
/// violation.
void validate_corpus(const DocCorpus& corpus);

/// Integer values every hole may try regardless of documentation.
std::vector<std::int64_t> default_int_seed_pool();

/// Per type tag ("int", "float", "bool", "string"), the documented defaults of
/// `entry` united with the seed pool. Each list is sorted ascending and free of
/// duplicates.
std::map<std::string, std::vector<Literal>> default_value_pool(
    const ApiEntry& entry, const std::vector<std::int64_t>& int_seed = default_int_seed_pool());

}  // namespace apimorph
