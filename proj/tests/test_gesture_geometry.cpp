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

#include <cmath>

#include "support.hpp"
#include "uncom/gesture_geometry.hpp"

using namespace uncom;
using uncom::test::error_code_of;
using uncom::test::make_detection;
using uncom::test::make_hand;
using uncom::test::Rng;

namespace {

PointingRay ray_of(const Point2& origin, const Point2& direction) {
  PointingRay r;
  r.ray.origin = origin;
  r.ray.direction = direction.normalized();
  r.base = origin - 0.05 * r.ray.direction;
  return r;
}

// Independent oracle: minimum distance over densely sampled ray points.
double sampled_distance(const PointingRay& r, const Point2& p, double reach, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double t = reach * i / samples;
    best = std::min(best, (r.origin() + t * r.direction() - p).norm());
  }
  return best;
}

std::size_t brute_nearest(const PointingRay& r, const std::vector<Detection>& dets) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const Point2 c = dets[i].bbox.center();
    const Point2 rel = c - r.origin();
    const double t = std::max(0.0, rel.dot(r.direction()));
    const double d = (rel - t * r.direction()).norm();
    if (d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && dets[i].score > dets[best].score)) {
      best = i;
      best_d = std::min(best_d, d);
    }
  }
  return best;
}

DepthMap depth_from(int width, int height, const std::function<double(double, double)>& f) {
  DepthMap m;
  m.values.resize(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) m.values(y, x) = f((x + 0.5) / width, (y + 0.5) / height);
  return m;
}

}  // namespace

TEST_CASE("pointing ray from index landmarks") {
  PointingRay r = pointing_ray(make_hand({0.4, 0.6}, {0.4, 0.4}));
  CHECK(r.origin().isApprox(Point2(0.4, 0.4)));
  CHECK(r.direction().isApprox(Point2(0.0, -1.0)));
  r = pointing_ray(make_hand({0.3, 0.5}, {0.5, 0.5}));
  CHECK(r.direction().isApprox(Point2(1.0, 0.0)));
  CHECK(error_code_of([] { pointing_ray(make_hand({0.5, 0.5}, {0.5, 0.5})); }) == ErrorCode::DegeneratePointing);
}

TEST_CASE("pointing ray is unit length and flips when landmarks swap") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Point2 a = rng.point(), b = rng.point();
    if ((a - b).norm() < 1e-3) continue;
    const PointingRay forward = pointing_ray(make_hand(a, b));
    const PointingRay backward = pointing_ray(make_hand(b, a));
    CHECK(std::abs(forward.direction().norm() - 1.0) < 1e-9);
    CHECK((forward.direction() + backward.direction()).norm() < 1e-12);
    CHECK(forward.origin() == b);
  }
}

TEST_CASE("pointing hand is the one nearer the camera") {
  std::vector<HandObservation> hands = {make_hand({0.2, 0.8}, {0.2, 0.7}, -0.1),
                                        make_hand({0.7, 0.8}, {0.7, 0.7}, -0.3)};
  CHECK(&select_pointing_hand(hands) == &hands[1]);
  CHECK(&select_pointing_hand(hands, ZSign::CloserIsLarger) == &hands[0]);
  CHECK(&select_pointing_hand(std::span(hands).first(1)) == &hands[0]);
  CHECK(error_code_of([] { select_pointing_hand({}); }) == ErrorCode::NoHandDetected);

  std::vector<HandObservation> tied = {make_hand({0.2, 0.8}, {0.2, 0.7}, -0.2, 0.6),
                                       make_hand({0.7, 0.8}, {0.7, 0.7}, -0.2, 0.9)};
  CHECK(&select_pointing_hand(tied) == &tied[1]);
  tied[1].score.reset();
  CHECK(&select_pointing_hand(tied) == &tied[0]);
}

TEST_CASE("point to ray distance") {
  const PointingRay r = ray_of({0, 0}, {1, 0});
  CHECK(distance_point_to_ray(r, {3, 4}) == doctest::Approx(4.0));
  CHECK(distance_point_to_ray(r, {-2, 0}) == doctest::Approx(2.0));
  CHECK(distance_point_to_ray(r, {-2, 0}, {RaySemantics::Line}) == doctest::Approx(0.0));
  const PointingRay diag = ray_of({0, 0}, {1, 1});
  const double d = distance_point_to_ray(diag, {1, 0});
  CHECK(d == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(std::abs(d - sampled_distance(diag, {1, 0}, 2.0, 100000)) < 1e-4);
}

TEST_CASE("distance agrees with dense sampling on random pairs") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const PointingRay r = ray_of(rng.point(), rng.unit());
    const Point2 p = rng.point();
    CAPTURE(i);
    CHECK(std::abs(distance_point_to_ray(r, p) - sampled_distance(r, p, 2.0, 100000)) < 1e-4);
  }
}

TEST_CASE("distance is zero exactly on the forward ray") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const PointingRay r = ray_of(rng.point(), rng.unit());
    const double t = rng.uniform(0.0, 1.0);
    CHECK(distance_point_to_ray(r, r.ray.at(t)) < 1e-9);
    CHECK(distance_point_to_ray(r, r.ray.at(-t - 1e-3)) > 1e-9);
    const Point2 normal(-r.direction().y(), r.direction().x());
    CHECK(distance_point_to_ray(r, r.ray.at(t) + 1e-6 * normal) > 1e-9);
  }
}

TEST_CASE("aspect ratio option measures in pixel proportions") {
  const PointingRay r = ray_of({0, 0}, {1, 0});
  CHECK(distance_point_to_ray(r, {0.5, 0.3}, {RaySemantics::Ray, 4.0 / 3.0}) == doctest::Approx(0.3));
  const PointingRay vertical = ray_of({0, 0}, {0, 1});
  CHECK(distance_point_to_ray(vertical, {0.3, 0.5}, {RaySemantics::Ray, 4.0 / 3.0}) == doctest::Approx(0.4));
}

TEST_CASE("nearest detection examples") {
  const PointingRay r = ray_of({0, 0}, {1, 1});
  std::vector<Detection> dets = {make_detection("a", {0.5, 0.5}), make_detection("b", {0.9, 0.1})};
  NearestDetection n = select_nearest_detection(r, dets);
  CHECK(n.index == 0);
  REQUIRE(n.distances.size() == 2);
  CHECK(n.distances[0] == doctest::Approx(0.0));
  CHECK(n.distances[1] == doctest::Approx(0.8 / std::sqrt(2.0)));

  std::vector<Detection> one = {make_detection("only", {0.1, 0.9})};
  CHECK(select_nearest_detection(ray_of({0.9, 0.1}, {1, 0}), one).index == 0);

  const PointingRay horizontal = ray_of({0.1, 0.5}, {1, 0});
  std::vector<Detection> mirror = {make_detection("up", {0.6, 0.4}), make_detection("down", {0.6, 0.6})};
  CHECK(select_nearest_detection(horizontal, mirror).index == 0);
  mirror[1].score = 0.95;
  CHECK(select_nearest_detection(horizontal, mirror).index == 1);

  CHECK(error_code_of([&] { select_nearest_detection(r, {}); }) == ErrorCode::NoDetections);
}

TEST_CASE("nearest detection matches brute force with and without ties") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const PointingRay r = ray_of(rng.point(), rng.unit());
    std::vector<Detection> dets;
    const int n = rng.integer(1, 8);
    for (int k = 0; k < n; ++k) dets.push_back(make_detection("o", rng.point(), 0.02, rng.uniform(0.3, 0.9)));
    if (i % 4 == 0 && n >= 2) {
      // Exact tie: reflect the first center across the ray's line.
      const Point2 c = dets[0].bbox.center();
      const Point2 foot = r.origin() + (c - r.origin()).dot(r.direction()) * r.direction();
      const Point2 mirrored = 2.0 * foot - c;
      dets[1] = make_detection("o", mirrored, 0.02, rng.coin() ? dets[0].score : rng.uniform(0.3, 0.9));
    }
    CAPTURE(i);
    CHECK(select_nearest_detection(r, dets).index == brute_nearest(r, dets));
  }
}

TEST_CASE("distractor monotonicity and scale invariance") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const PointingRay r = ray_of(rng.point(), rng.unit());
    std::vector<Detection> dets;
    const int n = rng.integer(1, 6);
    for (int k = 0; k < n; ++k) dets.push_back(make_detection("o", rng.point(), 0.02, rng.uniform(0.3, 0.9)));
    const NearestDetection base = select_nearest_detection(r, dets);
    const double best = base.distances[base.index];

    std::vector<Detection> more = dets;
    for (int k = 0; k < 3; ++k) {
      const Point2 c = rng.point(-1.0, 2.0);
      if (distance_point_to_ray(r, c) > best + 1e-9) more.push_back(make_detection("d", c, 0.02, 1.0));
    }
    CHECK(select_nearest_detection(r, more).index == base.index);

    const double s = rng.uniform(0.1, 10.0);
    PointingRay scaled = r;
    scaled.ray.origin *= s;
    scaled.base *= s;
    std::vector<Detection> grown;
    for (const auto& d : dets) {
      const Point2 c = d.bbox.center() * s;
      grown.push_back(make_detection(d.label, c, 0.02 * s, d.score));
    }
    CHECK(select_nearest_detection(scaled, grown).index == base.index);
  }
}

TEST_CASE("lifting a ray with depth") {
  const DepthMap flat = depth_from(64, 48, [](double, double) { return 0.7; });
  const Ray3d lifted = lift_ray_3d(pointing_ray(make_hand({0.3, 0.6}, {0.5, 0.4})), flat);
  CHECK(lifted.direction.z() == 0.0);
  CHECK(lifted.origin.isApprox(Point3(0.5, 0.4, 0.7)));

  // Base and tip one pixel apart on a 1000-wide map: the xy offset is 1e-3, the depth drop 1.
  DepthMap step = depth_from(1000, 10, [](double x, double) { return x < 0.5 ? 2.0 : 1.0; });
  PointingRay r;
  r.base = {0.4995, 0.55};
  r.ray.origin = {0.5005, 0.55};
  r.ray.direction = {1.0, 0.0};
  const Ray3d toward = lift_ray_3d(r, step);
  CHECK((toward.direction - Point3(0, 0, -1)).norm() < 2e-3);
  CHECK(std::abs(toward.direction.norm() - 1.0) < 1e-12);

  const double slope = 0.8;
  const DepthMap ramp = depth_from(100, 100, [slope](double x, double) { return 0.2 + slope * x; });
  const Ray3d along = lift_ray_3d(pointing_ray(make_hand({0.205, 0.505}, {0.605, 0.505})), ramp);
  CHECK(along.direction.isApprox(Point3(1.0, 0.0, slope).normalized(), 1e-9));
  CHECK(along.direction.z() / along.direction.x() == doctest::Approx(slope));

  CHECK(error_code_of([&] { lift_ray_3d(ray_of({1.2, 0.5}, {1, 0}), ramp); }) == ErrorCode::DepthOutOfBounds);
}
