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

#include <string>
#include <vector>

#include "corpus.hpp"
#include "program.hpp"
#include "runtime.hpp"

namespace apimorph {

/// Unknown argument position `#id` with its finite candidate domain.
struct Hole {
  int id = 0;
  TypeTag type = TypeTag::kInt;  // kIntPair never appears: pairs split into two kInt holes
  std::vector<Literal> domain;
  int call_index = 0;       // position of the owning call in the chain
  std::string param;        // parameter (or reshaping slot) the hole fills
  int component = -1;       // 0 or 1 for the halves of an int pair
  bool reshaping = false;   // belongs to a reshaping call

  /// `padding[0]` for pair components, the plain name otherwise.
  std::string symbol() const;
};

/// One argument position of a call template.
struct Slot {
  std::string param;
  bool keyword = false;
  std::vector<int> holes;  // one hole, or two for an int pair
};

struct CallTemplate {
  std::string api;
  bool reshaping = false;
  bool preserves_shape = true;
  std::vector<Slot> slots;
};

/// Reshaping calls followed by exactly one target call, all arguments holes.
struct Sketch {
  std::vector<CallTemplate> chain;
  std::vector<Hole> holes;  // holes[i].id == i + 1
  bool infeasible = false;

  std::size_t size() const { return chain.size(); }
  const CallTemplate& target_call() const { return chain.back(); }
  /// True if any reshaping call changes the tensor layout before the target.
  bool reshapes_layout() const;
  const Hole& hole(int id) const { return holes.at(static_cast<std::size_t>(id - 1)); }
  /// `a(#1,#2); b(#3,(#4,#5),k=#6)`, no spaces inside calls.
  std::string to_string() const;
};

/// Size-1 sketch first, then every ordered selection of distinct reshaping
/// ops (in vocabulary order) up to `max_size - 1` ops prepended to the
/// target. Target holes are numbered first, reshaping holes after them.
/// Reshaping slot names come from `target` when it documents the op.
std::vector<Sketch> generate_sketches(const ApiEntry& api, int max_size, const std::vector<ReshapingOp>& vocab,
                                      const DocCorpus* target = nullptr);

/// Fills every hole domain: literals of the hole's type taken from
/// `source_call` (source order, deduplicated, tuple components included)
/// followed by `default_value_pool(target_entry)` ascending. Booleans always
/// get [false, true]; enum holes append the enum values. Marks the sketch
/// infeasible and returns false if some domain ends up empty.
bool populate_domains(Sketch& sketch, const CallSite& source_call, const ApiEntry& target_entry,
                      const std::vector<std::int64_t>& int_seed = default_int_seed_pool());

}  // namespace apimorph
