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

#include <random>
#include <sstream>

#include "errmsg.hpp"
#include "error.hpp"
#include "external_runtime.hpp"
#include "mock_library.hpp"

using namespace apimorph;

namespace {

const std::string kAdapter = APIMORPH_MOCK_ADAPTER;

std::vector<Json> serve(const std::string& requests) {
  MockRuntime rt;
  std::istringstream in(requests);
  std::ostringstream out;
  serve_protocol(in, out, rt, "test 1");
  std::vector<Json> replies;
  std::istringstream lines(out.str());
  for (std::string l; std::getline(lines, l);) replies.push_back(Json::parse(l));
  return replies;
}

Tensor random_tensor(std::mt19937_64& rng, std::vector<std::int64_t> shape) {
  Tensor t;
  t.shape = std::move(shape);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (std::int64_t i = 0; i < t.element_count(); ++i) t.data.push_back(d(rng));
  return t;
}

const char* const kPrograms[] = {
    "inputs: x\ny = torchlet.nn.ReLU()\n",
    "inputs: x\ny = flow.layers.Conv2D(2, 3)\n",
    "inputs: x\ny = torchlet.nn.Conv2d(2, 3, (3, 3))\n",
    "inputs: x\ny = torchlet.nn.Conv2d(1, 3, (2, 2), stride=(0, 1))\n",
    "inputs: x\na = torchlet.Tensor.permute(0, 3, 1, 2)\ny = torchlet.nn.GlobalAvgPool2d()\n",
    "inputs: x\ny = torchlet.Tensor.permute(0, 0, 1, 2)\n",
    "inputs: x\ny = flow.math.clip(-0.5, 0.5)\n",
};

}  // namespace

TEST_CASE("protocol server answers hello and eval") {
  auto r = serve(R"({"op":"hello","libraries":["flow"]})"
                 "\n"
                 R"({"id":4,"op":"eval","code":"inputs: x\ny = flow.math.scale(2.0)\n","inputs":{"x":{"tensor":{"dtype":"float","shape":[2],"data":[1.0,-1.0]}}}})"
                 "\n");
  REQUIRE(r.size() == 2);
  CHECK(r[0]["ok"] == true);
  CHECK(r[0]["version"] == "test 1");
  CHECK(r[1]["id"] == 4);
  CHECK(r[1]["status"] == "ok");
  auto v = value_from_json(r[1]["value"]);
  CHECK(v.tensor().data == std::vector<double>{2.0, -2.0});
}

TEST_CASE("malformed requests get error replies") {
  auto r = serve("not json\n"
                 "[1,2]\n"
                 R"({"id":7})"
                 "\n"
                 R"({"id":8,"op":"eval"})"
                 "\n"
                 R"({"id":9,"op":"dance"})"
                 "\n"
                 R"({"id":10,"op":"eval","code":"inputs: x\ny = flow.layers.ReLU()\n","inputs":{"x":{"bogus":1}}})"
                 "\n"
                 "\n");
  REQUIRE(r.size() == 6);
  CHECK(r[0]["id"].is_null());
  CHECK(r[1]["id"].is_null());
  CHECK(r[2]["id"] == 7);
  CHECK(r[3]["id"] == 8);
  CHECK(r[4]["id"] == 9);
  CHECK(r[5]["id"] == 10);
  for (const auto& x : r) CHECK(x["status"] == "error");
  CHECK(r[0]["message"] == "malformed request");
}

TEST_CASE("adapter process handshake and repeated evaluation") {
  ExternalRuntime ext(kAdapter, {"flow", "torchlet"});
  MockRuntime mock;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Tensor x = random_tensor(rng, {1, 4, 4, 1});
    std::string code = kPrograms[static_cast<std::size_t>(i) % std::size(kPrograms)];
    auto a = ext.run(code, {{"x", Value{x}}});
    auto b = mock.run(code, {{"x", Value{x}}});
    CAPTURE(code);
    REQUIRE(a.ok == b.ok);
    if (a.ok)
      CHECK(values_equal(a.value, b.value));
    else
      CHECK(a.message == b.message);
  }
  CHECK(ext.spawn_count() == 1);
  CHECK(ext.adapter_version().rfind("mock-adapter ", 0) == 0);
  CHECK(ext.backend_id() == "external");
}

TEST_CASE("messages crossing the process boundary stay classifiable") {
  ExternalRuntime ext(kAdapter, {"torchlet"});
  Tensor x{DType::kFloat, {1, 1, 5, 5}, std::vector<double>(25, 1.0)};
  auto stride = ext.run("inputs: x\ny = torchlet.nn.Conv2d(1, 3, (2, 2), stride=(0, 1))\n", {{"x", Value{x}}});
  REQUIRE_FALSE(stride.ok);
  auto c = classify(stride.message);
  REQUIRE(c);
  CHECK(c->type == 4);
  auto neg = ext.run("inputs: x\ny = torchlet.nn.Conv2d(-1, 3, (2, 2))\n", {{"x", Value{x}}});
  REQUIRE_FALSE(neg.ok);
  auto c1 = classify(neg.message);
  REQUIRE(c1);
  CHECK(c1->type == 1);
}

TEST_CASE("a slow adapter times out and is replaced") {
  ExternalRuntime ext(kAdapter + " --delay-ms 400", {"flow"}, std::chrono::milliseconds(100));
  Tensor x{DType::kFloat, {1}, {1.0}};
  auto r = ext.run("inputs: x\ny = flow.layers.ReLU()\n", {{"x", Value{x}}});
  CHECK_FALSE(r.ok);
  CHECK(r.message == "evaluation timeout or adapter exit");
  CHECK(ext.pid() == -1);
  ext.run("inputs: x\ny = flow.layers.ReLU()\n", {{"x", Value{x}}});
  CHECK(ext.spawn_count() == 2);
}

TEST_CASE("a crashed adapter is respawned") {
  ExternalRuntime ext(kAdapter + " --exit-after 2", {"flow"});
  Tensor x{DType::kFloat, {1}, {-1.0}};
  const std::string code = "inputs: x\ny = flow.layers.ReLU()\n";
  CHECK(ext.run(code, {{"x", Value{x}}}).ok);
  CHECK(ext.run(code, {{"x", Value{x}}}).ok);
  auto dead = ext.run(code, {{"x", Value{x}}});
  CHECK_FALSE(dead.ok);
  auto again = ext.run(code, {{"x", Value{x}}});
  REQUIRE(again.ok);
  CHECK(again.value.tensor().data == std::vector<double>{0.0});
  CHECK(ext.spawn_count() == 2);
}

TEST_CASE("handshake failures are runtime errors") {
  Tensor x{DType::kFloat, {1}, {1.0}};
  for (const char* cmd : {"true", "echo nope", "echo '{\"ok\":false}'"}) {
    CAPTURE(cmd);
    try {
      ExternalRuntime ext(cmd, {"flow"}, std::chrono::milliseconds(2000));
      ext.run("inputs: x\ny = flow.layers.ReLU()\n", {{"x", Value{x}}});
      FAIL("expected a handshake error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kRuntime);
    }
  }
}
