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

#include "orchestrator.hpp"
#include "value.hpp"

namespace apimorph {

/// JSON form of a report. Wall-clock fields are left out when
/// `include_timings` is false so that reports of identical runs compare
/// byte for byte.
Json report_to_json(const MigrationReport& report, bool include_timings = true);

/// Pretty-printed JSON with a trailing newline. Throws kIo when the file
/// cannot be written.
void write_report(const MigrationReport& report, const std::string& path, bool include_timings = true);

/// Writes `text` to `path`; throws kIo on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace apimorph
