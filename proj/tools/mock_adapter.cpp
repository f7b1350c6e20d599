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

// Out-of-process host for the mock libraries, speaking the adapter protocol
// on stdin/stdout.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <thread>

#include "external_runtime.hpp"
#include "mock_library.hpp"
#include "version.hpp"

namespace {

// Test hooks: slow responses and early exit.
class HookedRuntime : public apimorph::RuntimeAdapter {
 public:
  HookedRuntime(int delay_ms, int exit_after) : delay_ms_(delay_ms), exit_after_(exit_after) {}
  std::string backend_id() const override { return inner_.backend_id(); }
  apimorph::RunOutcome run(const std::string& code, const std::map<std::string, apimorph::Value>& inputs) override {
    if (exit_after_ >= 0 && served_++ >= exit_after_) std::exit(3);
    if (delay_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
    return inner_.run(code, inputs);
  }

 private:
  apimorph::MockRuntime inner_;
  int delay_ms_;
  int exit_after_;
  int served_ = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock library adapter"};
  int delay_ms = 0, exit_after = -1;
  app.add_option("--delay-ms", delay_ms, "Sleep before answering each eval request");
  app.add_option("--exit-after", exit_after, "Exit after answering this many eval requests");
  CLI11_PARSE(app, argc, argv);

  std::ios::sync_with_stdio(false);
  HookedRuntime runtime(delay_ms, exit_after);
  apimorph::serve_protocol(std::cin, std::cout, runtime, std::string("mock-adapter ") + apimorph::kVersion);
  return 0;
}
