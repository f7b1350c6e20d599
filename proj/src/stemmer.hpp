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
#include <string_view>
#include <vector>

namespace apimorph {

/// Porter suffix-stripping stemmer, original 1980 rule set. Expects a
/// lowercase ASCII word; words of two letters or fewer are returned as is.
std::string porter_stem(std::string_view word);

/// Lowercases, splits on anything that is not [a-z0-9], and stems each token.
/// Deterministic; empty text yields an empty list.
std::vector<std::string> tokenize_and_stem(std::string_view text);

/// Lowercase split without stemming (used for error messages).
std::vector<std::string> tokenize(std::string_view text);

}  // namespace apimorph
