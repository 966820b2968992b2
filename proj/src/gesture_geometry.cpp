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

#include "uncom/gesture_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uncom/error.hpp"

namespace uncom {

PointingRay pointing_ray(const HandObservation& hand) {
  const Landmark& base = hand.index_base();
  const Landmark& tip = hand.index_tip();
  const Point2 delta = tip.xy() - base.xy();
  const double len = delta.norm();
  if (!(len >= kMinPointingLength)) {
    throw Error(ErrorCode::DegeneratePointing, "index finger base and tip coincide");
  }
  PointingRay r;
  r.ray.origin = tip.xy();
  r.ray.direction = delta / len;
  r.base = base.xy();
  r.base_z = base.z;
  r.tip_z = tip.z;
  return r;
}

const HandObservation& select_pointing_hand(std::span<const HandObservation> hands, ZSign z_sign) {
  if (hands.empty()) throw Error(ErrorCode::NoHandDetected, "no hand in frame");
  const HandObservation* best = &hands[0];
  auto closeness = [z_sign](const HandObservation& h) {
    return z_sign == ZSign::CloserIsSmaller ? -h.index_tip().z : h.index_tip().z;
  };
  for (std::size_t i = 1; i < hands.size(); ++i) {
    const HandObservation& h = hands[i];
    const double a = closeness(h);
    const double b = closeness(*best);
    if (a > b) {
      best = &h;
    } else if (a == b && h.score && best->score && *h.score > *best->score) {
      best = &h;
    }
  }
  return *best;
}

namespace {

Point2 scaled(const Point2& p, double aspect) { return {p.x() * aspect, p.y()}; }

}  // namespace

double distance_point_to_ray(const PointingRay& ray, const Point2& p, const GeometryOptions& options) {
  if (options.aspect_ratio == 1.0) return distance(ray.ray, p, options.semantics);
  Ray2d r;
  r.origin = scaled(ray.ray.origin, options.aspect_ratio);
  r.direction = scaled(ray.ray.direction, options.aspect_ratio).normalized();
  return distance(r, scaled(p, options.aspect_ratio), options.semantics);
}

NearestDetection select_nearest_detection(const PointingRay& ray, std::span<const Detection> detections,
                                          const GeometryOptions& options) {
  if (detections.empty()) throw Error(ErrorCode::NoDetections, "no detections to choose from");
  NearestDetection out;
  out.distances.reserve(detections.size());
  for (const auto& d : detections) out.distances.push_back(distance_point_to_ray(ray, d.bbox.center(), options));
  const double best = *std::min_element(out.distances.begin(), out.distances.end());
  bool found = false;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (out.distances[i] > best + kTieTolerance) continue;
    if (!found || detections[i].score > detections[out.index].score) out.index = i;
    found = true;
  }
  return out;
}

Ray3d lift_ray_3d(const PointingRay& ray, const DepthMap& depth) {
  const auto tip_px = pixel_of(ray.origin(), depth.width(), depth.height());
  const auto base_px = pixel_of(ray.base, depth.width(), depth.height());
  if (!tip_px || !base_px) {
    throw Error(ErrorCode::DepthOutOfBounds, "pointing ray endpoint outside the depth map");
  }
  const Point3 tip(ray.origin().x(), ray.origin().y(), depth.values((*tip_px).y(), (*tip_px).x()));
  const Point3 base(ray.base.x(), ray.base.y(), depth.values((*base_px).y(), (*base_px).x()));
  Ray3d out;
  out.origin = tip;
  out.direction = (tip - base).normalized();
  return out;
}

}  // namespace uncom
