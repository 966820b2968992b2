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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdlib>

#include "support.hpp"
#include "uncom/bridge.hpp"
#include "uncom/perception.hpp"

using namespace uncom;
using uncom::test::error_code_of;
using uncom::test::make_detection;
using uncom::test::make_hand;

namespace {

Json hand_json(double x) { return encode(make_hand({x, 0.7}, {x, 0.6})); }

// Two frames, a two-mug detection, a single hand and a depth map on f1.
Json sample_bundle() {
  Json mugs = Json::array({encode(make_detection("mug", {0.3, 0.6}, 0.04, 0.8, "f1")),
                           encode(make_detection("mug", {0.7, 0.6}, 0.04, 0.7, "f1"))});
  return {{"schema", "uncom/1"},
          {"frames", {{{"frame_id", "f1"}, {"timestamp", 0.5}}, {{"frame_id", "f2"}, {"timestamp", 1.0}, {"image", "f2.png"}}}},
          {"transcript", {{"language", "en"}, {"words", {{{"text", "Take"}, {"start", 0.1}, {"end", 0.3}}}}}},
          {"z_sign", "closer_is_smaller"},
          {"recordings",
           {{{"capability", "detect"}, {"frame_id", "f1"}, {"prompt", "mug."}, {"payload", mugs}},
            {{"capability", "detect"}, {"frame_id", "f1"}, {"prompt", "plate."}, {"payload", Json::array()}},
            {{"capability", "hands"}, {"frame_id", "f1"}, {"prompt", ""}, {"payload", Json::array({hand_json(0.3)})}},
            {{"capability", "hands"}, {"frame_id", "f2"}, {"prompt", ""}, {"payload", Json::array()}},
            {{"capability", "segment"}, {"frame_id", "f1"}, {"prompt", "0.3000,0.6000"},
             {"payload", {{"width", 4}, {"height", 2}, {"rle", {1, 2, 5}}}}},
            {{"capability", "depth"}, {"frame_id", "f1"}, {"prompt", ""},
             {"payload", {{"width", 2}, {"height", 1}, {"values", {0.25, 0.75}}}}}}}};
}

PerceptionBundle decode_bundle(const Json& j) { return decode_as<PerceptionBundle>(j, "$"); }

Error capture_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an uncom::Error");
  return Error(ErrorCode::Io, "unreachable");
}

#ifdef UNCOM_PYTHON
std::string bridge_command(const std::string& mode) {
  return std::string(UNCOM_PYTHON) + " " + (test::source_dir() / "tests/data/fake_bridge.py").string() + " " + mode;
}
#endif

}  // namespace

TEST_CASE("fixture detect replays recordings verbatim") {
  const PerceptionBundle b = decode_bundle(sample_bundle());
  FixtureProvider p(b);
  const auto mugs = p.detect("f1", "mug.");
  REQUIRE(mugs.size() == 2);
  CHECK(mugs[0] == make_detection("mug", {0.3, 0.6}, 0.04, 0.8, "f1"));
  CHECK(p.detect("f1", "plate.").empty());
  CHECK(error_code_of([&] { p.detect("f9", "mug."); }) == ErrorCode::UnknownFrame);
  const Error miss = capture_error([&] { p.detect("f1", "bowl."); });
  CHECK(miss.code() == ErrorCode::MissingRecording);
  const std::string what = miss.what();
  CHECK(what.find("(f1, \"bowl.\")") != std::string::npos);
  CHECK(what.find("\"mug.\"") != std::string::npos);
  CHECK(what.find("\"plate.\"") != std::string::npos);
}

TEST_CASE("fixture hands, segment and depth") {
  FixtureProvider p(decode_bundle(sample_bundle()));
  CHECK(p.hands("f1").size() == 1);
  CHECK(p.hands("f2").empty());
  const PixelMask m = p.segment("f1", {0.3, 0.6});
  CHECK(m == p.segment("f1", {0.30001, 0.59999}));
  CHECK(m.width == 4);
  CHECK(error_code_of([&] { p.segment("f1", {1.2, 0.5}); }) == ErrorCode::PreconditionViolation);
  CHECK(error_code_of([&] { p.segment("f1", {0.5, 0.5}); }) == ErrorCode::MissingRecording);
  const DepthMap d = p.depth("f1");
  CHECK(d.values(0, 1) == 0.75);
  CHECK(error_code_of([&] { p.depth("f2"); }) == ErrorCode::MissingRecording);
  CHECK(p.transcribe("audio.wav").words.size() == 1);
  Json no_text = sample_bundle();
  no_text.erase("transcript");
  no_text["audio"] = "clip.wav";
  FixtureProvider audio_only(decode_bundle(no_text));
  CHECK(error_code_of([&] { audio_only.transcribe("clip.wav"); }) == ErrorCode::MissingRecording);
  CHECK(error_code_of([&] { audio_only.extract(extraction_prompts(), {}); }) == ErrorCode::MissingRecording);
  CHECK(p.concurrent());
}

TEST_CASE("bundle validation") {
  CHECK_NOTHROW(decode_bundle(sample_bundle()));

  Json j = sample_bundle();
  j["recordings"][2]["payload"] = Json::array({hand_json(0.2), hand_json(0.4), hand_json(0.6)});
  Error e = capture_error([&] { decode_bundle(j); });
  CHECK(e.code() == ErrorCode::InvariantViolation);
  CHECK(e.path() == "$.recordings[2].payload");

  j = sample_bundle();
  j["frames"][1]["timestamp"] = 0.5;
  CHECK(capture_error([&] { decode_bundle(j); }).path() == "$.frames[1].timestamp");

  j = sample_bundle();
  j["frames"][1]["frame_id"] = "f1";
  CHECK(capture_error([&] { decode_bundle(j); }).code() == ErrorCode::InvariantViolation);

  j = sample_bundle();
  j["recordings"][0]["frame_id"] = "f7";
  CHECK(capture_error([&] { decode_bundle(j); }).path() == "$.recordings[0].frame_id");

  j = sample_bundle();
  j["recordings"][0]["capability"] = "teleport";
  CHECK(capture_error([&] { decode_bundle(j); }).code() == ErrorCode::SchemaMismatch);

  j = sample_bundle();
  j["schema"] = "uncom/2";
  CHECK(capture_error([&] { decode_bundle(j); }).code() == ErrorCode::SchemaMismatch);

  j = sample_bundle();
  j.erase("transcript");
  CHECK(capture_error([&] { decode_bundle(j); }).code() == ErrorCode::InvariantViolation);
  j["audio"] = "command.wav";
  CHECK(decode_bundle(j).audio == "command.wav");

  j = sample_bundle();
  j["recordings"].push_back(j["recordings"][0]);
  CHECK(capture_error([&] { decode_bundle(j); }).code() == ErrorCode::InvariantViolation);
}

TEST_CASE("bundle encoding is stable across a round trip") {
  const PerceptionBundle b = decode_bundle(sample_bundle());
  const std::string once = encode_json(b);
  CHECK(encode_json(decode_json<PerceptionBundle>(once)) == once);
  for (const auto& entry : std::filesystem::directory_iterator(test::suite_dir())) {
    const std::string name = entry.path().filename().string();
    if (name.find(".bundle.json") == std::string::npos) continue;
    CAPTURE(name);
    const PerceptionBundle loaded = load_bundle(entry.path().string());
    CHECK(encode_json(decode_json<PerceptionBundle>(encode_json(loaded))) == encode_json(loaded));
  }
  CHECK(error_code_of([] { load_bundle("/nonexistent/bundle.json"); }) == ErrorCode::Io);
}

TEST_CASE("recording provider keeps each distinct query once") {
  FixtureProvider fixture(decode_bundle(sample_bundle()));
  RecordingProvider rec(fixture);
  rec.detect("f1", "mug.");
  rec.hands("f1");
  rec.detect("f1", "mug.");
  rec.segment("f1", {0.3, 0.6});
  rec.segment("f1", {0.30001, 0.6});
  rec.depth("f1");
  CHECK_THROWS(rec.detect("f1", "bowl."));
  REQUIRE(rec.recordings().size() == 4);
  CHECK(rec.recordings()[0].capability == Capability::Detect);
  CHECK(rec.recordings()[0].prompt == "mug.");
  CHECK(rec.recordings()[1].capability == Capability::Hands);
  CHECK(rec.recordings()[2].prompt == "0.3000,0.6000");
  CHECK(rec.recordings()[3].capability == Capability::Depth);

  // Recorded responses form a bundle that replays identically.
  PerceptionBundle replay = fixture.bundle();
  replay.recordings = rec.recordings();
  FixtureProvider again(decode_json<PerceptionBundle>(encode_json(replay)));
  CHECK(again.detect("f1", "mug.") == fixture.detect("f1", "mug."));
  CHECK(again.segment("f1", {0.3, 0.6}) == fixture.segment("f1", {0.3, 0.6}));
}

TEST_CASE("segment keys quantize to four decimals") {
  CHECK(quantize_point({0.3, 0.6}) == "0.3000,0.6000");
  CHECK(quantize_point({0.123449, 0.99996}) == "0.1234,1.0000");
}

TEST_CASE("handshake parsing") {
  BridgeHandshake h = parse_handshake(R"({"schema":"uncom/1","capabilities":["detect","hands","segment","depth"],"z_sign":"closer_is_larger"})");
  CHECK(h.capabilities.count(Capability::Depth) == 1);
  CHECK(h.capabilities.count(Capability::Extract) == 0);
  CHECK(h.z_sign == ZSign::CloserIsLarger);
  h = parse_handshake(R"({"schema":"uncom/1","capabilities":["detect","hands","segment","levitate"]})");
  CHECK(h.z_sign == ZSign::CloserIsSmaller);
  CHECK(h.capabilities.size() == 3);
  CHECK(error_code_of([] { parse_handshake(R"({"schema":"uncom/1","capabilities":["detect","hands"]})"); }) ==
        ErrorCode::BridgeProtocolError);
  CHECK(error_code_of([] { parse_handshake("loading weights..."); }) == ErrorCode::BridgeProtocolError);
  CHECK(error_code_of([] { parse_handshake(R"({"schema":"uncom/1","capabilities":["detect","hands","segment"],"z_sign":"up"})"); }) ==
        ErrorCode::BridgeProtocolError);
}

TEST_CASE("bridge command comes from the environment") {
  unsetenv(kBridgeCommandEnv);
  const Error e = capture_error([] { BridgeClient::from_environment(); });
  CHECK(e.code() == ErrorCode::BridgeUnavailable);
  CHECK(std::string(e.what()).find("UNCOM_BRIDGE_CMD") != std::string::npos);
  CHECK(error_code_of([] { BridgeClient("exit 3", std::chrono::milliseconds(2000)); }) == ErrorCode::BridgeUnavailable);
}

#ifdef UNCOM_PYTHON

TEST_CASE("bridge client speaks the line protocol") {
  setenv(kBridgeCommandEnv, bridge_command("normal").c_str(), 1);
  BridgeClient bridge = BridgeClient::from_environment(std::chrono::seconds(20));
  CHECK(bridge.handshake().z_sign == ZSign::CloserIsSmaller);
  CHECK(bridge.handshake().capabilities.count(Capability::Extract) == 1);
  const auto mugs = bridge.detect("f1", "mug.");
  REQUIRE(mugs.size() == 1);
  CHECK(mugs[0].label == "mug");
  CHECK(bridge.detect("f1", "bowl.").empty());
  const auto hands = bridge.hands("f2");
  REQUIRE(hands.size() == 1);
  CHECK(hands[0].index_tip().y == doctest::Approx(0.3));
  CHECK(bridge.segment("f1", {0.25, 0.55}).rle == std::vector<std::uint32_t>{2, 2, 4});
  CHECK(bridge.depth("f1").values(1, 0) == 0.3);
  CHECK(bridge.transcribe("clip.wav").words.size() == 1);
  CHECK(bridge.extract(extraction_prompts(), test::make_transcript("Take the mug")).find("'object'") != std::string::npos);
  CHECK(error_code_of([&] { bridge.detect("f9", "mug."); }) == ErrorCode::UnknownFrame);
  CHECK(error_code_of([&] { bridge.segment("f1", {-0.1, 0.5}); }) == ErrorCode::PreconditionViolation);
  unsetenv(kBridgeCommandEnv);
}

TEST_CASE("bridge-backed extraction through the adapter") {
  BridgeClient bridge(bridge_command("normal"), std::chrono::seconds(20));
  ProviderExtractionAdapter adapter(bridge);
  const ExtractionResult r = extract_via_adapter(test::make_transcript("Take the mug and put it here"), adapter);
  CHECK(r.source == ExtractionSource::Adapter);
  CHECK(r.elements.object->text == "mug");
  CHECK_FALSE(*r.elements.target->concrete);
}

TEST_CASE("bridge protocol violations") {
  BridgeClient garbage(bridge_command("garbage"), std::chrono::seconds(20));
  const Error e = capture_error([&] { garbage.detect("f1", "mug."); });
  CHECK(e.code() == ErrorCode::BridgeProtocolError);
  CHECK(std::string(e.what()).find("Traceback (most recent call last)") != std::string::npos);

  BridgeClient wrong(bridge_command("wrong_id"), std::chrono::seconds(20));
  CHECK(error_code_of([&] { wrong.hands("f1"); }) == ErrorCode::BridgeProtocolError);

  BridgeClient crowded(bridge_command("three_hands"), std::chrono::seconds(20));
  CHECK(error_code_of([&] { crowded.hands("f1"); }) == ErrorCode::BridgeProtocolError);

  CHECK(error_code_of([&] { BridgeClient(bridge_command("bad_handshake"), std::chrono::seconds(20)); }) ==
        ErrorCode::BridgeProtocolError);

  BridgeClient larger(bridge_command("larger_z"), std::chrono::seconds(20));
  CHECK(larger.handshake().z_sign == ZSign::CloserIsLarger);
}

TEST_CASE("bridge timeout reports the elapsed time") {
  const auto started = std::chrono::steady_clock::now();
  const Error e = capture_error([] { BridgeClient(bridge_command("slow"), std::chrono::milliseconds(300)); });
  const auto elapsed = std::chrono::steady_clock::now() - started;
  CHECK(e.code() == ErrorCode::BridgeUnavailable);
  CHECK(std::string(e.what()).find("timed out after") != std::string::npos);
  CHECK(std::string(e.what()).find(" ms") != std::string::npos);
  CHECK(elapsed < std::chrono::seconds(3));
}

#endif
