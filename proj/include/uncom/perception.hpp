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

#ifndef UNCOM_PERCEPTION_HPP
#define UNCOM_PERCEPTION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/gesture_geometry.hpp"
#include "uncom/json_codec.hpp"

namespace uncom {

enum class Capability { Transcribe, Extract, Detect, Hands, Depth, Segment };

std::string_view to_string(Capability c);
std::optional<Capability> parse_capability(std::string_view s);

std::string_view to_string(ZSign z);

struct FrameRef {
  std::string frame_id;
  double timestamp = 0.0;
  std::optional<std::string> image;

  bool operator==(const FrameRef&) const = default;
};

using Payload = std::variant<std::vector<Detection>, std::vector<HandObservation>, PixelMask, DepthMap,
                             Transcript, std::string>;

struct Recording {
  Capability capability = Capability::Detect;
  std::string frame_id;  // empty for transcribe/extract
  std::string prompt;    // detect prompt, quantized segment point, else empty
  Payload payload;
};

// Demuxed, perception-annotated recording of one spoken command.
struct PerceptionBundle {
  std::vector<FrameRef> frames;
  std::optional<Transcript> transcript;
  std::optional<std::string> audio;
  std::vector<Recording> recordings;
  ZSign z_sign = ZSign::CloserIsSmaller;

  const FrameRef* find_frame(std::string_view id) const;
};

Json encode(const FrameRef& v);
Json encode(const PerceptionBundle& v);
void decode(const Json& j, const std::string& path, FrameRef& out);
void decode(const Json& j, const std::string& path, PerceptionBundle& out);

// Fixture lookup key for a segmentation prompt point: "x,y" at 4 decimals.
std::string quantize_point(const Point2& p);

// Perception backend. detect, hands and segment are mandatory; the rest throw
// UnsupportedCapability unless overridden.
class PerceptionProvider {
 public:
  virtual ~PerceptionProvider() = default;

  virtual std::vector<Detection> detect(const std::string& frame_id, const std::string& prompt) = 0;
  virtual std::vector<HandObservation> hands(const std::string& frame_id) = 0;
  virtual PixelMask segment(const std::string& frame_id, const Point2& point) = 0;
  virtual DepthMap depth(const std::string& frame_id);
  virtual Transcript transcribe(const std::string& audio);
  // Runs the two extraction prompts over the transcript and returns the model text.
  virtual std::string extract(const std::array<std::string, 2>& prompts, const Transcript& transcript);

  virtual bool concurrent() const { return false; }
};

// Replays a bundle's recorded responses. Immutable, safe to share across threads.
class FixtureProvider : public PerceptionProvider {
 public:
  explicit FixtureProvider(PerceptionBundle bundle);

  std::vector<Detection> detect(const std::string& frame_id, const std::string& prompt) override;
  std::vector<HandObservation> hands(const std::string& frame_id) override;
  PixelMask segment(const std::string& frame_id, const Point2& point) override;
  DepthMap depth(const std::string& frame_id) override;
  Transcript transcribe(const std::string& audio) override;
  std::string extract(const std::array<std::string, 2>& prompts, const Transcript& transcript) override;

  bool concurrent() const override { return true; }
  const PerceptionBundle& bundle() const { return bundle_; }

 private:
  using Key = std::tuple<Capability, std::string, std::string>;

  const Payload& lookup(Capability cap, const std::string& frame_id, const std::string& prompt) const;
  void require_frame(const std::string& frame_id) const;

  PerceptionBundle bundle_;
  std::map<Key, std::size_t> index_;
};

// Forwards to another provider and keeps every response as a Recording, so a
// live run can be saved as a replayable bundle holding exactly the queries the
// engine issued.
class RecordingProvider : public PerceptionProvider {
 public:
  explicit RecordingProvider(PerceptionProvider& inner) : inner_(inner) {}

  std::vector<Detection> detect(const std::string& frame_id, const std::string& prompt) override;
  std::vector<HandObservation> hands(const std::string& frame_id) override;
  PixelMask segment(const std::string& frame_id, const Point2& point) override;
  DepthMap depth(const std::string& frame_id) override;
  Transcript transcribe(const std::string& audio) override;
  std::string extract(const std::array<std::string, 2>& prompts, const Transcript& transcript) override;

  bool concurrent() const override { return false; }
  // Recordings in first-query order; repeated queries are kept once.
  const std::vector<Recording>& recordings() const { return recordings_; }

 private:
  void keep(Capability cap, const std::string& frame_id, const std::string& prompt, Payload payload);

  PerceptionProvider& inner_;
  std::vector<Recording> recordings_;
};

// Loads and validates a bundle file. Throws Io or decode errors.
PerceptionBundle load_bundle(const std::string& path);

}  // namespace uncom

#endif  // UNCOM_PERCEPTION_HPP
