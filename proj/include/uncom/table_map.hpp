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

#ifndef UNCOM_TABLE_MAP_HPP
#define UNCOM_TABLE_MAP_HPP

#include <optional>
#include <span>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/extraction.hpp"
#include "uncom/json_codec.hpp"
#include "uncom/ray.hpp"

namespace uncom {

struct VoronoiCell {
  Point2 site = Point2::Zero();
  Polygon2 polygon;  // counter-clockwise, clipped to the table box
  bool occupied = false;
  std::optional<double> center_depth;
};

struct TableMap {
  BBox table_bbox;
  std::optional<PixelMask> table_mask;
  std::vector<VoronoiCell> cells;
};

struct SiteGrid {
  int rows = 6;
  int cols = 6;
};

// Whose left and right: the camera's, or the instructor's facing it (x mirrored).
enum class DirectionConvention { Camera, Instructor };

// Sites closer than this are merged before construction.
inline constexpr double kSiteMergeTolerance = 1e-9;
// Polygon/box overlaps at or below this area do not occupy a cell.
inline constexpr double kOccupancyAreaEpsilon = 1e-12;

// Voronoi cells of `sites`, each clipped to `box`, via per-site half-plane
// intersection. Output order follows input order.
std::vector<Polygon2> voronoi_cells(std::span<const Point2> sites, const BBox& box);

// Grid sites (cell-center placement) plus every object center inside the
// table box; cells intersecting any object box with positive area are occupied.
TableMap build_table_map(const Detection& table, std::span<const Detection> objects,
                         const SiteGrid& grid = {});

bool satisfies_direction(const Point2& candidate, const Point2& anchor, RelationKind kind,
                         DirectionConvention convention = DirectionConvention::Camera);

// Index of the nearest empty cell in the relation's direction from the anchor
// center. Throws BetweenUnsupported or NoEmptyCell.
std::size_t find_empty_cell_directional(const TableMap& map, const Detection& anchor,
                                        RelationKind kind,
                                        DirectionConvention convention = DirectionConvention::Camera);

// center_depth = depth at each site's pixel.
TableMap annotate_depth(TableMap map, const DepthMap& depth);

struct CellSelection {
  std::size_t index = 0;
  bool occupied_fallback = false;
  std::vector<double> distances;  // per cell, map order
};

// Empty cell whose (site.x, site.y, center_depth) lies closest to the 3D ray;
// the global minimizer when every cell is occupied.
CellSelection select_cell_by_ray3d(const TableMap& map, const Ray3d& ray,
                                   RaySemantics semantics = RaySemantics::Ray);

Json encode(const VoronoiCell& v);
Json encode(const TableMap& v);

}  // namespace uncom

#endif  // UNCOM_TABLE_MAP_HPP
