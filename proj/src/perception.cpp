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

#include "uncom/perception.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "uncom/error.hpp"

namespace uncom {

using namespace json_detail;

std::string_view to_string(Capability c) {
  switch (c) {
    case Capability::Transcribe: return "transcribe";
    case Capability::Extract: return "extract";
    case Capability::Detect: return "detect";
    case Capability::Hands: return "hands";
    case Capability::Depth: return "depth";
    case Capability::Segment: return "segment";
  }
  return "detect";
}

std::optional<Capability> parse_capability(std::string_view s) {
  for (auto c : {Capability::Transcribe, Capability::Extract, Capability::Detect, Capability::Hands,
                 Capability::Depth, Capability::Segment}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(ZSign z) {
  return z == ZSign::CloserIsSmaller ? "closer_is_smaller" : "closer_is_larger";
}

const FrameRef* PerceptionBundle::find_frame(std::string_view id) const {
  for (const auto& f : frames) {
    if (f.frame_id == id) return &f;
  }
  return nullptr;
}

std::string quantize_point(const Point2& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f,%.4f", p.x(), p.y());
  return buf;
}

// --- JSON -------------------------------------------------------------------

Json encode(const FrameRef& v) {
  Json j = {{"frame_id", v.frame_id}, {"timestamp", v.timestamp}};
  if (v.image) j["image"] = *v.image;
  return j;
}

void decode(const Json& j, const std::string& path, FrameRef& out) {
  out.frame_id = get_string(field(j, path, "frame_id"), child(path, "frame_id"));
  if (out.frame_id.empty()) violated("frame_id non-empty", child(path, "frame_id"));
  out.timestamp = get_number(field(j, path, "timestamp"), child(path, "timestamp"));
  out.image.reset();
  if (const Json* img = optional_field(j, "image")) out.image = get_string(*img, child(path, "image"));
}

namespace {

Json encode_payload(const Payload& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return Json{{"text", v}};
        } else {
          return encode(v);
        }
      },
      p);
}

Payload decode_payload(Capability cap, const Json& j, const std::string& path) {
  switch (cap) {
    case Capability::Detect: return decode_as<std::vector<Detection>>(j, path);
    case Capability::Hands: {
      auto hands = decode_as<std::vector<HandObservation>>(j, path);
      if (hands.size() > 2) violated("at most two hands", path);
      return hands;
    }
    case Capability::Segment: return decode_as<PixelMask>(j, path);
    case Capability::Depth: return decode_as<DepthMap>(j, path);
    case Capability::Transcribe: return decode_as<Transcript>(j, path);
    case Capability::Extract: return get_string(field(j, path, "text"), child(path, "text"));
  }
  throw Error(ErrorCode::SchemaMismatch, "unknown capability at " + path, path);
}

bool frame_scoped(Capability c) { return c != Capability::Transcribe && c != Capability::Extract; }

}  // namespace

Json encode(const PerceptionBundle& v) {
  Json frames = Json::array();
  for (const auto& f : v.frames) frames.push_back(encode(f));
  Json recordings = Json::array();
  for (const auto& r : v.recordings) {
    recordings.push_back({{"capability", std::string(to_string(r.capability))},
                          {"frame_id", r.frame_id},
                          {"prompt", r.prompt},
                          {"payload", encode_payload(r.payload)}});
  }
  Json j = {{"frames", frames},
            {"transcript", v.transcript ? encode(*v.transcript) : Json(nullptr)},
            {"recordings", recordings},
            {"z_sign", std::string(to_string(v.z_sign))}};
  if (v.audio) j["audio"] = *v.audio;
  return as_document(std::move(j));
}

void decode(const Json& j, const std::string& path, PerceptionBundle& out) {
  require_schema(j, path);
  decode(field(j, path, "frames"), child(path, "frames"), out.frames);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    const std::string fp = child(path, "frames") + "[" + std::to_string(i) + "]";
    if (!ids.insert(out.frames[i].frame_id).second) violated("frame_ids unique", fp + ".frame_id");
    if (i > 0 && !(out.frames[i].timestamp > out.frames[i - 1].timestamp)) {
      violated("frame timestamps strictly increasing", fp + ".timestamp");
    }
  }

  out.transcript.reset();
  if (const Json* t = optional_field(j, "transcript")) out.transcript = decode_as<Transcript>(*t, child(path, "transcript"));
  out.audio.reset();
  if (const Json* a = optional_field(j, "audio")) out.audio = get_string(*a, child(path, "audio"));
  if (!out.transcript && !out.audio) violated("transcript or audio present", path);

  out.z_sign = ZSign::CloserIsSmaller;
  if (const Json* z = optional_field(j, "z_sign")) {
    const std::string s = get_string(*z, child(path, "z_sign"));
    if (s == "closer_is_smaller") {
      out.z_sign = ZSign::CloserIsSmaller;
    } else if (s == "closer_is_larger") {
      out.z_sign = ZSign::CloserIsLarger;
    } else {
      throw Error(ErrorCode::SchemaMismatch, "unknown z_sign '" + s + "' at " + child(path, "z_sign"),
                  child(path, "z_sign"));
    }
  }

  out.recordings.clear();
  const std::string rp = child(path, "recordings");
  const Json& recs = field(j, path, "recordings");
  if (!recs.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + rp, rp);
  std::set<std::tuple<Capability, std::string, std::string>> keys;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const std::string ip = rp + "[" + std::to_string(i) + "]";
    const Json& r = recs[i];
    Recording rec;
    const std::string cap = get_string(field(r, ip, "capability"), child(ip, "capability"));
    const auto parsed = parse_capability(cap);
    if (!parsed) {
      throw Error(ErrorCode::SchemaMismatch, "unknown capability '" + cap + "' at " + child(ip, "capability"),
                  child(ip, "capability"));
    }
    rec.capability = *parsed;
    rec.frame_id = get_string(field(r, ip, "frame_id"), child(ip, "frame_id"));
    rec.prompt = get_string(field(r, ip, "prompt"), child(ip, "prompt"));
    if (frame_scoped(rec.capability) && !out.find_frame(rec.frame_id)) {
      violated("recording references an existing frame_id", child(ip, "frame_id"));
    }
    rec.payload = decode_payload(rec.capability, field(r, ip, "payload"), child(ip, "payload"));
    if (const auto* dets = std::get_if<std::vector<Detection>>(&rec.payload)) {
      for (std::size_t k = 0; k < dets->size(); ++k) {
        if (!out.find_frame((*dets)[k].frame_id)) {
          violated("detection references an existing frame_id",
                   child(ip, "payload") + "[" + std::to_string(k) + "].frame_id");
        }
      }
    }
    if (!keys.insert({rec.capability, rec.frame_id, rec.prompt}).second) {
      violated("recording keys unique", ip);
    }
    out.recordings.push_back(std::move(rec));
  }
}

// --- provider ---------------------------------------------------------------

DepthMap PerceptionProvider::depth(const std::string&) {
  throw Error(ErrorCode::UnsupportedCapability, "provider has no depth capability");
}

Transcript PerceptionProvider::transcribe(const std::string&) {
  throw Error(ErrorCode::UnsupportedCapability, "provider has no transcribe capability");
}

std::string PerceptionProvider::extract(const std::array<std::string, 2>&, const Transcript&) {
  throw Error(ErrorCode::UnsupportedCapability, "provider has no extract capability");
}

FixtureProvider::FixtureProvider(PerceptionBundle bundle) : bundle_(std::move(bundle)) {
  for (std::size_t i = 0; i < bundle_.recordings.size(); ++i) {
    const auto& r = bundle_.recordings[i];
    index_.emplace(Key{r.capability, r.frame_id, r.prompt}, i);
  }
}

void FixtureProvider::require_frame(const std::string& frame_id) const {
  if (!bundle_.find_frame(frame_id)) throw Error(ErrorCode::UnknownFrame, "unknown frame '" + frame_id + "'");
}

const Payload& FixtureProvider::lookup(Capability cap, const std::string& frame_id,
                                       const std::string& prompt) const {
  auto it = index_.find(Key{cap, frame_id, prompt});
  if (it != index_.end()) return bundle_.recordings[it->second].payload;
  std::ostringstream msg;
  msg << "no " << to_string(cap) << " recording for (" << frame_id << ", \"" << prompt << "\")";
  std::vector<std::string> available;
  for (const auto& r : bundle_.recordings) {
    if (r.capability == cap && r.frame_id == frame_id) available.push_back("\"" + r.prompt + "\"");
  }
  msg << "; available for " << (frame_id.empty() ? std::string("bundle") : frame_id) << ": ";
  if (available.empty()) msg << "none";
  for (std::size_t i = 0; i < available.size(); ++i) msg << (i ? ", " : "") << available[i];
  throw Error(ErrorCode::MissingRecording, msg.str());
}

std::vector<Detection> FixtureProvider::detect(const std::string& frame_id, const std::string& prompt) {
  require_frame(frame_id);
  return std::get<std::vector<Detection>>(lookup(Capability::Detect, frame_id, prompt));
}

std::vector<HandObservation> FixtureProvider::hands(const std::string& frame_id) {
  require_frame(frame_id);
  return std::get<std::vector<HandObservation>>(lookup(Capability::Hands, frame_id, ""));
}

PixelMask FixtureProvider::segment(const std::string& frame_id, const Point2& point) {
  if (!(point.x() >= 0.0 && point.x() <= 1.0 && point.y() >= 0.0 && point.y() <= 1.0)) {
    throw Error(ErrorCode::PreconditionViolation, "segment point outside [0,1]^2");
  }
  require_frame(frame_id);
  return std::get<PixelMask>(lookup(Capability::Segment, frame_id, quantize_point(point)));
}

DepthMap FixtureProvider::depth(const std::string& frame_id) {
  require_frame(frame_id);
  return std::get<DepthMap>(lookup(Capability::Depth, frame_id, ""));
}

Transcript FixtureProvider::transcribe(const std::string&) {
  if (bundle_.transcript) return *bundle_.transcript;
  return std::get<Transcript>(lookup(Capability::Transcribe, "", ""));
}

std::string FixtureProvider::extract(const std::array<std::string, 2>&, const Transcript&) {
  return std::get<std::string>(lookup(Capability::Extract, "", ""));
}

void RecordingProvider::keep(Capability cap, const std::string& frame_id, const std::string& prompt,
                             Payload payload) {
  for (const auto& r : recordings_) {
    if (r.capability == cap && r.frame_id == frame_id && r.prompt == prompt) return;
  }
  recordings_.push_back({cap, frame_id, prompt, std::move(payload)});
}

std::vector<Detection> RecordingProvider::detect(const std::string& frame_id, const std::string& prompt) {
  auto v = inner_.detect(frame_id, prompt);
  keep(Capability::Detect, frame_id, prompt, v);
  return v;
}

std::vector<HandObservation> RecordingProvider::hands(const std::string& frame_id) {
  auto v = inner_.hands(frame_id);
  keep(Capability::Hands, frame_id, "", v);
  return v;
}

PixelMask RecordingProvider::segment(const std::string& frame_id, const Point2& point) {
  auto v = inner_.segment(frame_id, point);
  keep(Capability::Segment, frame_id, quantize_point(point), v);
  return v;
}

DepthMap RecordingProvider::depth(const std::string& frame_id) {
  auto v = inner_.depth(frame_id);
  keep(Capability::Depth, frame_id, "", v);
  return v;
}

Transcript RecordingProvider::transcribe(const std::string& audio) {
  auto v = inner_.transcribe(audio);
  keep(Capability::Transcribe, "", "", v);
  return v;
}

std::string RecordingProvider::extract(const std::array<std::string, 2>& prompts, const Transcript& transcript) {
  auto v = inner_.extract(prompts, transcript);
  keep(Capability::Extract, "", "", v);
  return v;
}

PerceptionBundle load_bundle(const std::string& path) {
  return decode_json<PerceptionBundle>(read_text_file(path));
}

}  // namespace uncom
