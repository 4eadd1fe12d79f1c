// Copyright 2026 The hiernav Authors
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

#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace hiernav {

// Static binary occupancy map. Immutable after construction; safe to share
// read-only across concurrent simulation runs.
//
// World/cell convention: cell (cx, cy) covers the half-open square
// [origin + cx*res, origin + (cx+1)*res) x [origin + cy*res, ...).
// Everything outside the grid bounds counts as occupied.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, Point2 origin,
                std::vector<std::uint8_t> cells);

  // Text format, line 1: "width height resolution origin_x origin_y",
  // then `height` rows of `width` chars, '#'=occupied '.'=free,
  // row 0 = smallest y.
  static OccupancyGrid load(const std::string& path);
  static OccupancyGrid parse(const std::string& text, const std::string& source_name = "<text>");
  void save(const std::string& path) const;

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Point2& origin() const { return origin_; }

  bool in_bounds(int cx, int cy) const {
    return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
  }
  bool cell_occupied(int cx, int cy) const {
    if (!in_bounds(cx, cy)) return true;
    return cells_[static_cast<std::size_t>(cy) * width_ + cx] != 0;
  }

  void world_to_cell(const Point2& p, int& cx, int& cy) const;
  Point2 cell_center(int cx, int cy) const;

  Point2 min_corner() const { return origin_; }
  Point2 max_corner() const {
    return {origin_.x + width_ * resolution_, origin_.y + height_ * resolution_};
  }

  // True iff p maps to an occupied cell; out of bounds is occupied.
  bool is_occupied(const Point2& p) const;

  // True iff every sample along a->b at spacing resolution/2 is free.
  bool raycast_free(const Point2& a, const Point2& b) const;

  // Distance from p to the nearest occupied cell rectangle within
  // `max_radius`; returns max_radius if none. 0 when p itself is occupied.
  double distance_to_occupied(const Point2& p, double max_radius) const;

  // No occupied cell within `radius` of p.
  bool disk_free(const Point2& p, double radius) const {
    return distance_to_occupied(p, radius + resolution_) > radius;
  }

 private:
  int width_;
  int height_;
  double resolution_;
  Point2 origin_;
  std::vector<std::uint8_t> cells_;  // row-major, row 0 = smallest y
};

}  // namespace hiernav
