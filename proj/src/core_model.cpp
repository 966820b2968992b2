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

#include "uncom/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uncom/error.hpp"

namespace uncom {

std::string Transcript::text() const {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w.text;
  }
  return out;
}

double Transcript::end_time() const {
  double end = 0.0;
  for (const auto& w : words) end = std::max(end, w.end);
  return end;
}

bool CommandElements::ordering_violation() const {
  return object && target && object->timespan.start > target->timespan.start;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
  const double iy = std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

PixelMask encode_mask(const MaskMatrix& mask) {
  PixelMask out;
  out.height = static_cast<int>(mask.rows());
  out.width = static_cast<int>(mask.cols());
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  const std::uint8_t* data = mask.data();
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    const std::uint8_t bit = data[i] != 0 ? 1 : 0;
    if (bit != current) {
      out.rle.push_back(run);
      run = 0;
      current = bit;
    }
    ++run;
  }
  out.rle.push_back(run);
  return out;
}

MaskMatrix decode_mask(const PixelMask& mask) {
  MaskMatrix out = MaskMatrix::Zero(mask.height, mask.width);
  std::uint64_t total = 0;
  for (auto r : mask.rle) total += r;
  if (total != static_cast<std::uint64_t>(mask.width) * static_cast<std::uint64_t>(mask.height)) {
    throw Error(ErrorCode::InvariantViolation, "sum of runs == width * height violated");
  }
  std::uint8_t* data = out.data();
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (auto r : mask.rle) {
    if (value) std::fill(data + pos, data + pos + r, std::uint8_t{1});
    pos += r;
    value ^= 1;
  }
  return out;
}

std::optional<Eigen::Vector2i> pixel_of(const Point2& p, int width, int height) {
  if (!(p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0)) return std::nullopt;
  if (width <= 0 || height <= 0) return std::nullopt;
  const int px = std::min(static_cast<int>(std::floor(p.x() * width)), width - 1);
  const int py = std::min(static_cast<int>(std::floor(p.y() * height)), height - 1);
  return Eigen::Vector2i(px, py);
}

DepthMap normalize_depth(const DepthMap& depth) {
  DepthMap out = depth;
  if (depth.values.size() == 0) return out;
  const double lo = depth.values.minCoeff();
  const double hi = depth.values.maxCoeff();
  if (hi - lo <= 0.0) {
    out.values.setZero();
  } else {
    out.values = (depth.values.array() - lo) / (hi - lo);
  }
  return out;
}

TargetResult TargetResult::from_object(ObjectResult o) {
  TargetResult t;
  t.kind = TargetKind::Object;
  t.object = std::move(o);
  return t;
}

TargetResult TargetResult::from_cell(EmptyCellResult c) {
  TargetResult t;
  t.kind = TargetKind::EmptyCell;
  t.empty_cell = std::move(c);
  return t;
}

std::string_view to_string(Handedness h) {
  switch (h) {
    case Handedness::Left: return "left";
    case Handedness::Right: return "right";
    case Handedness::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(TargetKind k) {
  return k == TargetKind::Object ? "object" : "empty_cell";
}

}  // namespace uncom
