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

#ifndef UNCOM_TESTS_SUPPORT_HPP
#define UNCOM_TESTS_SUPPORT_HPP

// Shared builders, a seeded generator and a scripted provider for the tests.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/error.hpp"
#include "uncom/perception.hpp"

namespace uncom::test {

inline std::filesystem::path source_dir() { return UNCOM_SOURCE_DIR; }
inline std::filesystem::path suite_dir() { return source_dir() / "data" / "suite"; }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return uniform() < p; }
  Point2 point(double lo = 0.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Point2 unit() {
    const double a = uniform(0.0, 6.283185307179586);
    return {std::cos(a), std::sin(a)};
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline HandObservation make_hand(const Point2& base, const Point2& tip, double tip_z = -0.05,
                                 std::optional<double> score = std::nullopt) {
  HandObservation h;
  for (std::size_t i = 0; i < kHandLandmarkCount; ++i) h.landmarks[i] = {base.x(), base.y(), tip_z + 0.03};
  h.landmarks[kIndexFingerBase] = {base.x(), base.y(), tip_z + 0.02};
  h.landmarks[kIndexFingerTip] = {tip.x(), tip.y(), tip_z};
  h.handedness = Handedness::Right;
  h.score = score;
  return h;
}

inline Detection make_detection(const std::string& label, const Point2& center, double half = 0.02,
                                double score = 0.8, const std::string& frame = "f1") {
  return {label, {center.x() - half, center.y() - half, center.x() + half, center.y() + half}, score, frame};
}

inline Transcript make_transcript(const std::string& text, double start = 0.5, double word = 0.3, double gap = 0.1) {
  Transcript t;
  std::size_t pos = 0;
  double at = start;
  while (pos < text.size()) {
    const auto next = text.find(' ', pos);
    const std::string w = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!w.empty()) {
      t.words.push_back({w, at, at + word});
      at += word + gap;
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return t;
}

// In-memory provider with call logging; unscripted detect prompts return [].
class ScriptedProvider : public PerceptionProvider {
 public:
  std::map<std::pair<std::string, std::string>, std::vector<Detection>> detections;
  std::map<std::string, std::vector<HandObservation>> hand_map;
  std::map<std::string, DepthMap> depth_map;
  std::vector<std::pair<std::string, Point2>> segment_calls;
  std::vector<std::pair<std::string, std::string>> detect_calls;

  std::vector<Detection> detect(const std::string& frame_id, const std::string& prompt) override {
    detect_calls.emplace_back(frame_id, prompt);
    auto it = detections.find({frame_id, prompt});
    return it == detections.end() ? std::vector<Detection>{} : it->second;
  }
  std::vector<HandObservation> hands(const std::string& frame_id) override {
    auto it = hand_map.find(frame_id);
    return it == hand_map.end() ? std::vector<HandObservation>{} : it->second;
  }
  PixelMask segment(const std::string& frame_id, const Point2& point) override {
    segment_calls.emplace_back(frame_id, point);
    return PixelMask{2, 1, {1, 1}};
  }
  DepthMap depth(const std::string& frame_id) override {
    auto it = depth_map.find(frame_id);
    if (it == depth_map.end()) throw Error(ErrorCode::MissingRecording, "no depth for " + frame_id);
    return it->second;
  }
};

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an uncom::Error");
}

}  // namespace uncom::test

#endif  // UNCOM_TESTS_SUPPORT_HPP
