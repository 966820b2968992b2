// Copyright 2026 The uncom Authors.
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

#include "uncom/bridge.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "uncom/error.hpp"

namespace uncom {

namespace {

std::string excerpt(const std::string& line) {
  constexpr std::size_t kMax = 80;
  return line.size() <= kMax ? line : line.substr(0, kMax) + "...";
}

Json parse_line(const std::string& line) {
  try {
    return Json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::BridgeProtocolError, "bridge sent a non-JSON line: " + excerpt(line));
  }
}

template <typename T>
T decode_payload(const Json& payload, Capability cap) {
  try {
    return decode_as<T>(payload, "$.payload");
  } catch (const Error& e) {
    throw Error(ErrorCode::BridgeProtocolError,
                "bridge " + std::string(to_string(cap)) + " payload rejected: " + e.what(), e.path());
  }
}

}  // namespace

BridgeHandshake parse_handshake(const std::string& line) {
  const Json j = parse_line(line);
  if (!j.is_object() || j.value("schema", std::string()) != kSchemaVersion) {
    throw Error(ErrorCode::BridgeProtocolError, "bad bridge handshake: " + excerpt(line));
  }
  BridgeHandshake h;
  const auto caps = j.find("capabilities");
  if (caps == j.end() || !caps->is_array()) {
    throw Error(ErrorCode::BridgeProtocolError, "handshake lacks capabilities: " + excerpt(line));
  }
  for (const auto& c : *caps) {
    if (!c.is_string()) continue;
    if (auto cap = parse_capability(c.get<std::string>())) h.capabilities.insert(*cap);
  }
  const std::string z = j.value("z_sign", std::string("closer_is_smaller"));
  if (z == "closer_is_larger") {
    h.z_sign = ZSign::CloserIsLarger;
  } else if (z != "closer_is_smaller") {
    throw Error(ErrorCode::BridgeProtocolError, "unknown z_sign in handshake: " + excerpt(line));
  }
  for (auto required : {Capability::Detect, Capability::Hands, Capability::Segment}) {
    if (!h.capabilities.count(required)) {
      throw Error(ErrorCode::BridgeProtocolError,
                  "bridge lacks mandatory capability " + std::string(to_string(required)));
    }
  }
  return h;
}

BridgeClient::BridgeClient(const std::string& command, std::chrono::milliseconds timeout) : timeout_(timeout) {
  spawn(command);
  try {
    handshake_ = parse_handshake(read_line());
  } catch (...) {
    shutdown();
    throw;
  }
}

BridgeClient BridgeClient::from_environment(std::chrono::milliseconds timeout) {
  const char* cmd = std::getenv(kBridgeCommandEnv);
  if (!cmd || !*cmd) {
    throw Error(ErrorCode::BridgeUnavailable, std::string(kBridgeCommandEnv) + " is not set");
  }
  return BridgeClient(cmd, timeout);
}

BridgeClient::BridgeClient(BridgeClient&& other) noexcept
    : pid_(other.pid_),
      to_child_(other.to_child_),
      from_child_(other.from_child_),
      buffer_(std::move(other.buffer_)),
      timeout_(other.timeout_),
      next_id_(other.next_id_),
      handshake_(std::move(other.handshake_)) {
  other.pid_ = -1;
  other.to_child_ = -1;
  other.from_child_ = -1;
}

BridgeClient::~BridgeClient() { shutdown(); }

void BridgeClient::spawn(const std::string& command) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw Error(ErrorCode::BridgeUnavailable, "pipe failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error(ErrorCode::BridgeUnavailable, "pipe failed");
  }
  const pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::BridgeUnavailable, "fork failed");
  if (pid == 0) {
    // Own process group, so shutdown reaches whatever the shell spawns.
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  // A dead bridge must surface as an error, not SIGPIPE.
  std::signal(SIGPIPE, SIG_IGN);
}

void BridgeClient::shutdown() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(-pid_, SIGTERM);
      waitpid(pid_, &status, 0);
    }
  }
  pid_ = -1;
}

std::string BridgeClient::read_line() {
  const auto started = std::chrono::steady_clock::now();
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    if (elapsed >= timeout_) {
      throw Error(ErrorCode::BridgeUnavailable,
                  "bridge timed out after " + std::to_string(elapsed.count()) + " ms");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>((timeout_ - elapsed).count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(ErrorCode::BridgeUnavailable, "bridge closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void BridgeClient::write_line(const std::string& line) {
  std::string data = line + "\n";
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(ErrorCode::BridgeUnavailable, "bridge closed its input");
    off += static_cast<std::size_t>(n);
  }
}

Json BridgeClient::call(Capability capability, Json args) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (to_child_ < 0) throw Error(ErrorCode::BridgeUnavailable, "bridge not running");
  const long long id = next_id_++;
  write_line(Json{{"id", id}, {"capability", std::string(to_string(capability))}, {"args", std::move(args)}}.dump());
  const std::string line = read_line();
  const Json reply = parse_line(line);
  if (!reply.is_object() || !reply.contains("id") || !reply.contains("ok") || !reply["ok"].is_boolean()) {
    throw Error(ErrorCode::BridgeProtocolError, "malformed bridge reply: " + excerpt(line));
  }
  if (reply["id"] != id) {
    throw Error(ErrorCode::BridgeProtocolError,
                "bridge reply id " + reply["id"].dump() + " does not answer request " + std::to_string(id));
  }
  if (!reply["ok"].get<bool>()) {
    const Json err = reply.value("error", Json::object());
    const std::string code = err.is_object() ? err.value("code", std::string("ModelError")) : "ModelError";
    const std::string message = err.is_object() ? err.value("message", std::string()) : err.dump();
    const ErrorCode mapped = code == "UnknownFrame" ? ErrorCode::UnknownFrame
                             : code == "UnknownCapability" ? ErrorCode::UnsupportedCapability
                                                           : ErrorCode::BridgeUnavailable;
    throw Error(mapped, "bridge " + code + ": " + message);
  }
  if (!reply.contains("payload")) {
    throw Error(ErrorCode::BridgeProtocolError, "ok reply without payload: " + excerpt(line));
  }
  return reply["payload"];
}

std::vector<Detection> BridgeClient::detect(const std::string& frame_id, const std::string& prompt) {
  return decode_payload<std::vector<Detection>>(call(Capability::Detect, {{"frame", frame_id}, {"prompt", prompt}}),
                                                Capability::Detect);
}

std::vector<HandObservation> BridgeClient::hands(const std::string& frame_id) {
  auto hands = decode_payload<std::vector<HandObservation>>(call(Capability::Hands, {{"frame", frame_id}}),
                                                            Capability::Hands);
  if (hands.size() > 2) throw Error(ErrorCode::BridgeProtocolError, "bridge reported more than two hands");
  return hands;
}

PixelMask BridgeClient::segment(const std::string& frame_id, const Point2& point) {
  if (!(point.x() >= 0.0 && point.x() <= 1.0 && point.y() >= 0.0 && point.y() <= 1.0)) {
    throw Error(ErrorCode::PreconditionViolation, "segment point outside [0,1]^2");
  }
  return decode_payload<PixelMask>(
      call(Capability::Segment, {{"frame", frame_id}, {"point", Json::array({point.x(), point.y()})}}),
      Capability::Segment);
}

DepthMap BridgeClient::depth(const std::string& frame_id) {
  return decode_payload<DepthMap>(call(Capability::Depth, {{"frame", frame_id}}), Capability::Depth);
}

Transcript BridgeClient::transcribe(const std::string& audio) {
  return decode_payload<Transcript>(call(Capability::Transcribe, {{"audio", audio}}), Capability::Transcribe);
}

std::string BridgeClient::extract(const std::array<std::string, 2>& prompts, const Transcript& transcript) {
  const Json payload = call(Capability::Extract, encode(AdapterRequest{prompts, transcript}));
  if (!payload.is_object() || !payload.contains("text") || !payload["text"].is_string()) {
    throw Error(ErrorCode::BridgeProtocolError, "extract payload lacks text");
  }
  return payload["text"].get<std::string>();
}

std::string ProviderExtractionAdapter::complete(const AdapterRequest& request) {
  try {
    return provider_.extract(request.prompts, request.transcript);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::BridgeUnavailable:
      case ErrorCode::BridgeProtocolError:
      case ErrorCode::MissingRecording:
      case ErrorCode::UnsupportedCapability:
        throw Error(ErrorCode::AdapterUnavailable, e.what());
      default:
        throw;
    }
  }
}

}  // namespace uncom
