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

#include "uncom/table_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uncom/error.hpp"
#include "uncom/gesture_geometry.hpp"
#include "uncom/polygon.hpp"

namespace uncom {

std::vector<Polygon2> voronoi_cells(std::span<const Point2> sites, const BBox& box) {
  std::vector<Polygon2> cells;
  cells.reserve(sites.size());
  const Polygon2 bounds = rectangle<double>(box.xmin, box.ymin, box.xmax, box.ymax);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Polygon2 cell = bounds;
    for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
      if (i == j) continue;
      // |x - si|^2 <= |x - sj|^2  <=>  (sj - si).x <= (|sj|^2 - |si|^2) / 2
      const Point2 normal = sites[j] - sites[i];
      const double offset = (sites[j].squaredNorm() - sites[i].squaredNorm()) / 2.0;
      cell = clip_halfplane<double>(cell, normal, offset);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

namespace {

bool strictly_inside(const BBox& box, const Point2& p) {
  return p.x() > box.xmin && p.x() < box.xmax && p.y() > box.ymin && p.y() < box.ymax;
}

bool overlaps(const Polygon2& cell, const BBox& box) {
  return area(clip_to_box<double>(cell, box.xmin, box.ymin, box.xmax, box.ymax)) > kOccupancyAreaEpsilon;
}

}  // namespace

TableMap build_table_map(const Detection& table, std::span<const Detection> objects, const SiteGrid& grid) {
  if (grid.rows < 2 || grid.cols < 2) {
    throw Error(ErrorCode::PreconditionViolation, "site grid needs at least 2 rows and 2 columns");
  }
  const BBox& box = table.bbox;
  std::vector<Point2> sites;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      sites.emplace_back(box.xmin + (c + 0.5) * box.width() / grid.cols,
                         box.ymin + (r + 0.5) * box.height() / grid.rows);
    }
  }
  for (const auto& o : objects) {
    const Point2 center = o.bbox.center();
    if (!strictly_inside(box, center)) continue;
    const bool duplicate = std::any_of(sites.begin(), sites.end(), [&](const Point2& s) {
      return (s - center).norm() <= kSiteMergeTolerance;
    });
    if (!duplicate) sites.push_back(center);
  }

  TableMap map;
  map.table_bbox = box;
  auto polygons = voronoi_cells(sites, box);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    VoronoiCell cell;
    cell.site = sites[i];
    cell.polygon = std::move(polygons[i]);
    cell.occupied = std::any_of(objects.begin(), objects.end(),
                                [&](const Detection& o) { return overlaps(cell.polygon, o.bbox); });
    map.cells.push_back(std::move(cell));
  }
  return map;
}

bool satisfies_direction(const Point2& candidate, const Point2& anchor, RelationKind kind,
                         DirectionConvention convention) {
  const double dx = convention == DirectionConvention::Camera ? candidate.x() - anchor.x()
                                                              : anchor.x() - candidate.x();
  const double dy = candidate.y() - anchor.y();
  switch (kind) {
    case RelationKind::Left: return dx < 0.0;
    case RelationKind::Right: return dx > 0.0;
    case RelationKind::Front: return dy > 0.0;
    case RelationKind::Behind: return dy < 0.0;
    case RelationKind::Beside:
    case RelationKind::Near:
    case RelationKind::NextTo: return true;
    case RelationKind::Between: return false;
  }
  return false;
}

std::size_t find_empty_cell_directional(const TableMap& map, const Detection& anchor, RelationKind kind,
                                        DirectionConvention convention) {
  if (kind == RelationKind::Between) {
    throw Error(ErrorCode::BetweenUnsupported, "two-anchor relation 'between' is not supported");
  }
  const Point2 a = anchor.bbox.center();
  std::optional<std::size_t> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const VoronoiCell& c = map.cells[i];
    if (c.occupied || !satisfies_direction(c.site, a, kind, convention)) continue;
    const double d = (c.site - a).norm();
    if (!best || d < best_distance - kTieTolerance) {
      best = i;
      best_distance = d;
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoEmptyCell,
                "no empty cell " + std::string(to_string(kind)) + " of the anchor '" + anchor.label + "'");
  }
  return *best;
}

TableMap annotate_depth(TableMap map, const DepthMap& depth) {
  for (auto& cell : map.cells) {
    const auto px = pixel_of(cell.site, depth.width(), depth.height());
    if (!px) throw Error(ErrorCode::DepthOutOfBounds, "cell site outside the depth map");
    cell.center_depth = depth.values((*px).y(), (*px).x());
  }
  return map;
}

CellSelection select_cell_by_ray3d(const TableMap& map, const Ray3d& ray, RaySemantics semantics) {
  if (map.cells.empty()) throw Error(ErrorCode::PreconditionViolation, "table map has no cells");
  CellSelection out;
  for (const auto& c : map.cells) {
    if (!c.center_depth) throw Error(ErrorCode::PreconditionViolation, "cell lacks a depth annotation");
    out.distances.push_back(distance(ray, Point3(c.site.x(), c.site.y(), *c.center_depth), semantics));
  }
  auto argmin = [&](bool empty_only) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
      if (empty_only && map.cells[i].occupied) continue;
      if (!best || out.distances[i] < out.distances[*best] - kTieTolerance) best = i;
    }
    return best;
  };
  if (auto empty = argmin(true)) {
    out.index = *empty;
  } else {
    out.index = *argmin(false);
    out.occupied_fallback = true;
  }
  return out;
}

Json encode(const VoronoiCell& v) {
  Json j = {{"site", encode(v.site)}, {"polygon", encode(v.polygon)}, {"occupied", v.occupied}};
  j["center_depth"] = v.center_depth ? Json(*v.center_depth) : Json(nullptr);
  return j;
}

Json encode(const TableMap& v) {
  Json cells = Json::array();
  for (const auto& c : v.cells) cells.push_back(encode(c));
  Json j = {{"table_bbox", encode(v.table_bbox)}, {"cells", cells}};
  if (v.table_mask) j["table_mask"] = encode(*v.table_mask);
  return j;
}

}  // namespace uncom
