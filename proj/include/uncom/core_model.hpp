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

#ifndef UNCOM_CORE_MODEL_HPP
#define UNCOM_CORE_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace uncom {

inline constexpr std::string_view kSchemaVersion = "uncom/1";

using Point2 = Eigen::Vector2d;
using Point3 = Eigen::Vector3d;
using Polygon2 = std::vector<Point2>;

struct WordToken {
  std::string text;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const WordToken&) const = default;
};

struct Transcript {
  std::vector<WordToken> words;
  std::string language = "en";

  // Tokens joined by single spaces.
  std::string text() const;
  bool empty() const { return words.empty(); }
  double start_time() const { return words.empty() ? 0.0 : words.front().start; }
  double end_time() const;

  bool operator==(const Transcript&) const = default;
};

struct Timespan {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const Timespan&) const = default;
};

struct Mention {
  std::string text;
  Timespan timespan;
  // Unset for action mentions.
  std::optional<bool> concrete;

  bool operator==(const Mention&) const = default;
};

struct CommandElements {
  std::optional<Mention> object;
  std::optional<Mention> action;
  std::optional<Mention> target;

  bool any() const { return object || action || target; }
  // Object named after the target violates the command register; flagged, not rejected.
  bool ordering_violation() const;

  bool operator==(const CommandElements&) const = default;
};

struct Landmark {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 xy() const { return {x, y}; }
  bool operator==(const Landmark&) const = default;
};

enum class Handedness { Left, Right, Unknown };

inline constexpr std::size_t kHandLandmarkCount = 21;
inline constexpr std::size_t kIndexFingerBase = 5;
inline constexpr std::size_t kIndexFingerTip = 8;

struct HandObservation {
  std::array<Landmark, kHandLandmarkCount> landmarks{};
  Handedness handedness = Handedness::Unknown;
  // Landmark-model presence confidence, when the provider reports one.
  std::optional<double> score;

  const Landmark& index_base() const { return landmarks[kIndexFingerBase]; }
  const Landmark& index_tip() const { return landmarks[kIndexFingerTip]; }
  bool operator==(const HandObservation&) const = default;
};

// Normalized [xmin, ymin, xmax, ymax].
struct BBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  Point2 center() const { return {(xmin + xmax) / 2.0, (ymin + ymax) / 2.0}; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Point2& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
  bool operator==(const BBox&) const = default;
};

double iou(const BBox& a, const BBox& b);

struct Detection {
  std::string label;
  BBox bbox;
  double score = 0.0;
  std::string frame_id;

  bool operator==(const Detection&) const = default;
};

// Binary mask stored as row-major run lengths, alternating zero-run/one-run,
// starting with a (possibly empty) zero-run.
struct PixelMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> rle;

  bool operator==(const PixelMask&) const = default;
};

using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

PixelMask encode_mask(const MaskMatrix& mask);
MaskMatrix decode_mask(const PixelMask& mask);

using DepthMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Relative monocular depth, larger = farther. Rows index y, columns index x.
struct DepthMap {
  DepthMatrix values;

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }

  bool operator==(const DepthMap& other) const {
    return values.rows() == other.values.rows() && values.cols() == other.values.cols() &&
           values == other.values;
  }
};

// Pixel containing a normalized point, or nullopt when the point lies outside [0,1]^2.
std::optional<Eigen::Vector2i> pixel_of(const Point2& p, int width, int height);

// Min-max rescale to [0,1]; a constant map becomes all zeros.
DepthMap normalize_depth(const DepthMap& depth);

struct ObjectResult {
  std::string name;
  BBox bbox;
  PixelMask mask;
  std::string frame_id;

  bool operator==(const ObjectResult&) const = default;
};

struct EmptyCellResult {
  Polygon2 cell_polygon;
  Point2 cell_center = Point2::Zero();
  std::string frame_id;

  bool operator==(const EmptyCellResult&) const = default;
};

enum class TargetKind { Object, EmptyCell };

struct TargetResult {
  TargetKind kind = TargetKind::Object;
  std::optional<ObjectResult> object;
  std::optional<EmptyCellResult> empty_cell;

  static TargetResult from_object(ObjectResult o);
  static TargetResult from_cell(EmptyCellResult c);

  bool operator==(const TargetResult&) const = default;
};

struct GroundedCommand {
  ObjectResult object;
  std::string action;
  TargetResult target;
  // Degradation markers raised while grounding (no_gesture, late_word, ...), sorted.
  std::vector<std::string> flags;

  bool operator==(const GroundedCommand&) const = default;
};

std::string_view to_string(Handedness h);
std::string_view to_string(TargetKind k);

}  // namespace uncom

#endif  // UNCOM_CORE_MODEL_HPP
