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

#ifndef UNCOM_GESTURE_GEOMETRY_HPP
#define UNCOM_GESTURE_GEOMETRY_HPP

#include <span>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/ray.hpp"

namespace uncom {

// How the hand-landmark provider orders its z axis.
enum class ZSign { CloserIsSmaller, CloserIsLarger };

// Index-finger pointing ray: origin at the fingertip (landmark 8), direction
// from the finger base (landmark 5) toward the tip.
struct PointingRay {
  Ray2d ray;
  Point2 base = Point2::Zero();
  double base_z = 0.0;
  double tip_z = 0.0;

  const Point2& origin() const { return ray.origin; }
  const Point2& direction() const { return ray.direction; }
};

inline constexpr double kMinPointingLength = 1e-6;

// Throws DegeneratePointing when landmarks 5 and 8 coincide.
PointingRay pointing_ray(const HandObservation& hand);

// Picks the hand whose fingertip is closer to the camera. Throws NoHandDetected.
const HandObservation& select_pointing_hand(std::span<const HandObservation> hands,
                                            ZSign z_sign = ZSign::CloserIsSmaller);

struct GeometryOptions {
  RaySemantics semantics = RaySemantics::Ray;
  // Multiplier on x before measuring (frame width / height); 1 keeps
  // normalized-space distances.
  double aspect_ratio = 1.0;
};

double distance_point_to_ray(const PointingRay& ray, const Point2& p,
                             const GeometryOptions& options = {});

struct NearestDetection {
  std::size_t index = 0;
  // Ray distance of every input detection's bbox center, input order.
  std::vector<double> distances;
};

// Argmin of bbox-center distance to the ray; ties go to the higher score, then
// the lower index. Throws NoDetections.
NearestDetection select_nearest_detection(const PointingRay& ray,
                                          std::span<const Detection> detections,
                                          const GeometryOptions& options = {});

// Lifts the 2D pointing ray with scene depth read at the tip and base pixels.
// Throws DepthOutOfBounds.
Ray3d lift_ray_3d(const PointingRay& ray, const DepthMap& depth);

// Distances closer than this are treated as ties.
inline constexpr double kTieTolerance = 1e-12;

}  // namespace uncom

#endif  // UNCOM_GESTURE_GEOMETRY_HPP
