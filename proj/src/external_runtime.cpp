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

#include "external_runtime.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "error.hpp"

namespace apimorph {

ExternalRuntime::ExternalRuntime(std::string command, std::vector<std::string> libraries,
                                 std::chrono::milliseconds timeout)
    : command_(std::move(command)), libraries_(std::move(libraries)), timeout_(timeout) {
  // A dead child must surface as a failed write, not a signal.
  struct sigaction current {};
  if (sigaction(SIGPIPE, nullptr, &current) == 0 && current.sa_handler == SIG_DFL) signal(SIGPIPE, SIG_IGN);
  spawn();
}

ExternalRuntime::~ExternalRuntime() { terminate(); }

void ExternalRuntime::spawn() {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0) throw Error(ErrorKind::kRuntime, "adapter pipe: " + std::string(std::strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error(ErrorKind::kRuntime, "adapter pipe: " + std::string(std::strerror(errno)));
  }
  pid_t pid = fork();
  if (pid < 0) throw Error(ErrorKind::kRuntime, "adapter fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
  ++spawns_;

  Json hello = {{"op", "hello"}, {"libraries", libraries_}};
  std::string line;
  if (!write_line(hello.dump()) || !read_line(line)) {
    terminate();
    throw Error(ErrorKind::kRuntime, "adapter handshake failed: no response from '" + command_ + "'");
  }
  Json reply = Json::parse(line, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || reply.value("ok", false) != true) {
    terminate();
    throw Error(ErrorKind::kRuntime, "adapter handshake rejected: " + line);
  }
  version_ = reply.contains("version") && reply["version"].is_string() ? reply["version"].get<std::string>() : "";
}

void ExternalRuntime::terminate() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
}

bool ExternalRuntime::write_line(const std::string& line) {
  std::string data = line + "\n";
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

bool ExternalRuntime::read_line(std::string& line) {
  auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return true;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return false;
    pollfd pfd{from_child_, POLLIN, 0};
    int r = poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

RunOutcome ExternalRuntime::run(const std::string& code, const std::map<std::string, Value>& inputs) {
  if (pid_ < 0) spawn();
  Json request = {{"id", next_id_++}, {"op", "eval"}, {"code", code}, {"inputs", Json::object()}};
  for (const auto& [name, value] : inputs) request["inputs"][name] = value_to_json(value);

  std::string line;
  if (!write_line(request.dump())) {
    terminate();
    return RunOutcome::failure("adapter process is not running");
  }
  // Skip stale replies to earlier ids.
  for (;;) {
    if (!read_line(line)) {
      terminate();
      return RunOutcome::failure("evaluation timeout or adapter exit");
    }
    Json reply = Json::parse(line, nullptr, false);
    if (reply.is_discarded() || !reply.is_object()) {
      terminate();
      return RunOutcome::failure("adapter reply is not recognized");
    }
    if (reply.value("id", Json()) != request["id"]) continue;
    std::string status = reply.value("status", "");
    if (status == "ok" && reply.contains("value")) {
      try {
        return RunOutcome::success(value_from_json(reply["value"]));
      } catch (const std::exception& e) {
        return RunOutcome::failure(std::string("adapter value is not recognized: ") + e.what());
      }
    }
    if (status == "error") return RunOutcome::failure(reply.value("message", std::string{}));
    return RunOutcome::failure("adapter reply is not recognized");
  }
}

// ---------------------------------------------------------------------------

void serve_protocol(std::istream& in, std::ostream& out, RuntimeAdapter& runtime, const std::string& version) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json req = Json::parse(line, nullptr, false);
    Json id = req.is_object() && req.contains("id") ? req["id"] : Json();
    Json reply;
    if (req.is_discarded() || !req.is_object() || !req.contains("op") || !req["op"].is_string()) {
      reply = {{"id", id}, {"status", "error"}, {"message", "malformed request"}};
    } else if (req["op"] == "hello") {
      reply = {{"ok", true}, {"version", version}};
    } else if (req["op"] == "eval") {
      if (!req.contains("code") || !req["code"].is_string()) {
        reply = {{"id", id}, {"status", "error"}, {"message", "malformed request"}};
      } else {
        try {
          std::map<std::string, Value> inputs;
          if (req.contains("inputs"))
            for (const auto& [name, v] : req["inputs"].items()) inputs[name] = value_from_json(v);
          RunOutcome r = runtime.run(req["code"].get<std::string>(), inputs);
          if (r.ok)
            reply = {{"id", id}, {"status", "ok"}, {"value", value_to_json(r.value)}};
          else
            reply = {{"id", id}, {"status", "error"}, {"message", r.message}};
        } catch (const std::exception& e) {
          reply = {{"id", id}, {"status", "error"}, {"message", e.what()}};
        }
      }
    } else {
      reply = {{"id", id}, {"status", "error"}, {"message", "malformed request"}};
    }
    out << reply.dump() << '\n';
    out.flush();
  }
}

}  // namespace apimorph
