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

#ifndef UNCOM_BRIDGE_HPP
#define UNCOM_BRIDGE_HPP

// Client side of the live-model bridge: newline-delimited JSON over the stdio
// of a spawned process.
//
//   bridge -> engine, once at startup:
//     {"schema":"uncom/1","capabilities":["detect",...],"z_sign":"closer_is_smaller"}
//   engine -> bridge, one line per request:
//     {"id":N,"capability":"detect","args":{"frame":"f1","prompt":"mug."}}
//   bridge -> engine, one line per request:
//     {"id":N,"ok":true,"payload":...} | {"id":N,"ok":false,"error":{"code":...,"message":...}}

#include <chrono>
#include <mutex>
#include <set>
#include <string>
#include <sys/types.h>

#include "uncom/extraction.hpp"
#include "uncom/perception.hpp"

namespace uncom {

inline constexpr const char* kBridgeCommandEnv = "UNCOM_BRIDGE_CMD";

struct BridgeHandshake {
  std::set<Capability> capabilities;
  ZSign z_sign = ZSign::CloserIsSmaller;
};

// Parses the startup line. Throws BridgeProtocolError.
BridgeHandshake parse_handshake(const std::string& line);

class BridgeClient : public PerceptionProvider {
 public:
  // Spawns `command` through /bin/sh and waits for the handshake.
  // Throws BridgeUnavailable.
  explicit BridgeClient(const std::string& command,
                        std::chrono::milliseconds timeout = std::chrono::seconds(120));
  // Command taken from UNCOM_BRIDGE_CMD. Throws BridgeUnavailable when unset.
  static BridgeClient from_environment(std::chrono::milliseconds timeout = std::chrono::seconds(120));
  ~BridgeClient() override;

  BridgeClient(const BridgeClient&) = delete;
  BridgeClient& operator=(const BridgeClient&) = delete;
  BridgeClient(BridgeClient&& other) noexcept;

  const BridgeHandshake& handshake() const { return handshake_; }

  std::vector<Detection> detect(const std::string& frame_id, const std::string& prompt) override;
  std::vector<HandObservation> hands(const std::string& frame_id) override;
  PixelMask segment(const std::string& frame_id, const Point2& point) override;
  DepthMap depth(const std::string& frame_id) override;
  Transcript transcribe(const std::string& audio) override;
  std::string extract(const std::array<std::string, 2>& prompts, const Transcript& transcript) override;

  // One request/reply exchange. Returns the payload of an ok reply.
  Json call(Capability capability, Json args);

 private:
  BridgeClient() = default;
  void spawn(const std::string& command);
  std::string read_line();
  void write_line(const std::string& line);
  void shutdown();

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::chrono::milliseconds timeout_{0};
  long long next_id_ = 1;
  BridgeHandshake handshake_;
  std::mutex mutex_;  // serial per process
};

// Language-model adapter routed through any provider's extract capability.
class ProviderExtractionAdapter : public ExtractionAdapter {
 public:
  explicit ProviderExtractionAdapter(PerceptionProvider& provider) : provider_(provider) {}
  std::string complete(const AdapterRequest& request) override;
  bool concurrent() const override { return provider_.concurrent(); }

 private:
  PerceptionProvider& provider_;
};

}  // namespace uncom

#endif  // UNCOM_BRIDGE_HPP
