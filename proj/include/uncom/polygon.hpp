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

#ifndef UNCOM_POLYGON_HPP
#define UNCOM_POLYGON_HPP

// Convex polygon primitives over Eigen 2-vectors, templated on the scalar.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace uncom {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using ConvexPolygon = std::vector<Vec2<Scalar>>;

template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Signed shoelace area; positive for counter-clockwise vertex order.
template <typename Scalar>
Scalar signed_area(const ConvexPolygon<Scalar>& poly) {
  Scalar twice = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross2<Scalar>(poly[i], poly[(i + 1) % n]);
  return twice / Scalar(2);
}

template <typename Scalar>
Scalar area(const ConvexPolygon<Scalar>& poly) {
  return std::abs(signed_area(poly));
}

template <typename Scalar>
Vec2<Scalar> centroid(const ConvexPolygon<Scalar>& poly) {
  const Scalar a = signed_area(poly);
  if (poly.empty()) return Vec2<Scalar>::Zero();
  if (std::abs(a) < Scalar(1e-15)) {
    Vec2<Scalar> mean = Vec2<Scalar>::Zero();
    for (const auto& p : poly) mean += p;
    return mean / Scalar(poly.size());
  }
  Vec2<Scalar> c = Vec2<Scalar>::Zero();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    c += (p + q) * cross2<Scalar>(p, q);
  }
  return c / (Scalar(6) * a);
}

// Merges consecutive vertices closer than `tol`; bisectors of collinear sites
// otherwise leave sliver edges that defeat orientation tests.
template <typename Scalar>
ConvexPolygon<Scalar> drop_near_duplicates(ConvexPolygon<Scalar> poly, Scalar tol = Scalar(1e-12)) {
  ConvexPolygon<Scalar> out;
  out.reserve(poly.size());
  for (const auto& p : poly) {
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

// Keeps the part of `poly` where normal . x <= offset (Sutherland-Hodgman, one edge).
template <typename Scalar>
ConvexPolygon<Scalar> clip_halfplane(const ConvexPolygon<Scalar>& poly, const Vec2<Scalar>& normal,
                                     Scalar offset) {
  ConvexPolygon<Scalar> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cur = poly[i];
    const auto& nxt = poly[(i + 1) % n];
    const Scalar dc = normal.dot(cur) - offset;
    const Scalar dn = normal.dot(nxt) - offset;
    if (dc <= 0) out.push_back(cur);
    if ((dc < 0 && dn > 0) || (dc > 0 && dn < 0)) {
      const Scalar t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return drop_near_duplicates(std::move(out));
}

template <typename Scalar>
ConvexPolygon<Scalar> rectangle(Scalar xmin, Scalar ymin, Scalar xmax, Scalar ymax) {
  return {Vec2<Scalar>(xmin, ymin), Vec2<Scalar>(xmax, ymin), Vec2<Scalar>(xmax, ymax),
          Vec2<Scalar>(xmin, ymax)};
}

// Intersection of a convex polygon with an axis-aligned box.
template <typename Scalar>
ConvexPolygon<Scalar> clip_to_box(ConvexPolygon<Scalar> poly, Scalar xmin, Scalar ymin, Scalar xmax,
                                  Scalar ymax) {
  poly = clip_halfplane<Scalar>(poly, Vec2<Scalar>(-1, 0), -xmin);
  poly = clip_halfplane<Scalar>(poly, Vec2<Scalar>(1, 0), xmax);
  poly = clip_halfplane<Scalar>(poly, Vec2<Scalar>(0, -1), -ymin);
  poly = clip_halfplane<Scalar>(poly, Vec2<Scalar>(0, 1), ymax);
  return poly;
}

// Point inside or on the boundary of a counter-clockwise convex polygon.
template <typename Scalar>
bool contains(const ConvexPolygon<Scalar>& poly, const Vec2<Scalar>& p, Scalar tol = Scalar(1e-12)) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2<Scalar> edge = poly[(i + 1) % n] - poly[i];
    if (cross2<Scalar>(edge, p - poly[i]) < -tol * std::max<Scalar>(Scalar(1), edge.norm())) {
      return false;
    }
  }
  return true;
}

// Convex and simple: at least three vertices, every turn in one direction
// (collinear vertices tolerated), and a single winding.
template <typename Scalar>
bool is_convex(const ConvexPolygon<Scalar>& poly, Scalar tol = Scalar(1e-12)) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  int sign = 0;
  Scalar winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2<Scalar> a = poly[(i + 1) % n] - poly[i];
    const Vec2<Scalar> b = poly[(i + 2) % n] - poly[(i + 1) % n];
    const Scalar c = cross2<Scalar>(a, b);
    if (std::abs(c) > tol) {
      const int s = c > 0 ? 1 : -1;
      if (sign != 0 && s != sign) return false;
      sign = s;
    }
    winding += std::atan2(c, a.dot(b));
  }
  if (sign == 0) return false;
  return std::abs(std::abs(winding) - Scalar(2 * M_PI)) < Scalar(1e-6);
}

}  // namespace uncom

#endif  // UNCOM_POLYGON_HPP
