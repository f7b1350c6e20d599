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

#include <chrono>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "runtime.hpp"

namespace apimorph {

/// Runtime hosted by a child process speaking newline-delimited JSON on its
/// stdin/stdout:
///   -> {"op":"hello","libraries":[...]}          <- {"ok":true,"version":"..."}
///   -> {"id":N,"op":"eval","code":"...","inputs":{var: Value}}
///   <- {"id":N,"status":"ok","value":Value} | {"id":N,"status":"error","message":"..."}
/// A request that does not answer within the timeout, or a child that dies,
/// yields an error result; the child is respawned on the next request.
class ExternalRuntime : public RuntimeAdapter {
 public:
  ExternalRuntime(std::string command, std::vector<std::string> libraries,
                  std::chrono::milliseconds timeout = std::chrono::seconds(10));
  ~ExternalRuntime() override;
  ExternalRuntime(const ExternalRuntime&) = delete;
  ExternalRuntime& operator=(const ExternalRuntime&) = delete;

  std::string backend_id() const override { return "external"; }
  RunOutcome run(const std::string& code, const std::map<std::string, Value>& inputs) override;
  std::vector<ReshapingOp> reshaping_vocabulary() const override { return vocabulary_; }

  /// Vocabulary is not part of the protocol; callers supply it.
  void set_reshaping_vocabulary(std::vector<ReshapingOp> v) { vocabulary_ = std::move(v); }

  const std::string& adapter_version() const { return version_; }
  int pid() const { return pid_; }
  int spawn_count() const { return spawns_; }

 private:
  void spawn();  // throws kRuntime when the handshake fails
  void terminate();
  bool write_line(const std::string& line);
  bool read_line(std::string& line);  // false on timeout or EOF

  std::string command_;
  std::vector<std::string> libraries_;
  std::chrono::milliseconds timeout_;
  std::vector<ReshapingOp> vocabulary_;
  std::string version_;
  std::string buffer_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int spawns_ = 0;
  long next_id_ = 1;
};

/// Adapter side of the protocol: answers every request line from `in` on
/// `out` using `runtime` until EOF. Malformed requests get an error response
/// carrying the offending id (null when none can be read).
void serve_protocol(std::istream& in, std::ostream& out, RuntimeAdapter& runtime,
                    const std::string& version);

}  // namespace apimorph
