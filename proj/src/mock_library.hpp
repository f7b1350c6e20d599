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

#include "runtime.hpp"

namespace apimorph {

/// In-process interpreter for the two toy libraries used by the tests and
/// benchmarks: `flow` (source side, NHWC pooling, Keras-like names) and
/// `torchlet` (target side, NCHW, PyTorch-like names).
///
/// Every error message produced by a target op fits exactly one of the four
/// hyponym shapes recognised by the error classifier.
class MockRuntime : public RuntimeAdapter {
 public:
  std::string backend_id() const override { return "mock"; }
  RunOutcome run(const std::string& code, const std::map<std::string, Value>& inputs) override;
  std::vector<ReshapingOp> reshaping_vocabulary() const override;

  /// Qualified names of every op the interpreter knows.
  static std::vector<std::string> op_names();
};

/// Deterministic weights shared by both libraries so that equivalent layers
/// compute identical numbers.
double mock_conv_weight(std::int64_t o, std::int64_t i, std::int64_t a, std::int64_t b);
double mock_conv_bias(std::int64_t o);
double mock_dense_weight(std::int64_t u, std::int64_t f);
double mock_dense_bias(std::int64_t u);

}  // namespace apimorph
