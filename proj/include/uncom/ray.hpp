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

#ifndef UNCOM_RAY_HPP
#define UNCOM_RAY_HPP

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace uncom {

// Forward ray (extension beyond the fingertip) or the full infinite line.
enum class RaySemantics { Ray, Line };

template <typename Scalar, int Dim>
struct Ray {
  using VectorType = Eigen::Matrix<Scalar, Dim, 1>;

  VectorType origin = VectorType::Zero();
  VectorType direction = VectorType::UnitX();  // unit length

  VectorType at(Scalar t) const { return origin + t * direction; }

  // Projection parameter of p onto the supporting line.
  Scalar parameter(const VectorType& p) const { return (p - origin).dot(direction); }
};

using Ray2d = Ray<double, 2>;
using Ray3d = Ray<double, 3>;

// Distance from p to the ray. Points behind the origin measure to the origin
// under Ray semantics and perpendicular to the line under Line semantics.
template <typename Scalar, int Dim>
Scalar distance(const Ray<Scalar, Dim>& ray, const Eigen::Matrix<Scalar, Dim, 1>& p,
                RaySemantics semantics = RaySemantics::Ray) {
  const Eigen::Matrix<Scalar, Dim, 1> rel = p - ray.origin;
  Scalar t = rel.dot(ray.direction);
  if (semantics == RaySemantics::Ray) t = std::max(t, Scalar(0));
  return (rel - t * ray.direction).norm();
}

}  // namespace uncom

#endif  // UNCOM_RAY_HPP
