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

#include <vector>

#include "bspline.hpp"
#include "occupancy_grid.hpp"

namespace hiernav {

// Dense pose sequence with cumulative arclength index.
struct GlobalPath {
  std::vector<Point2> poses;
  std::vector<double> cum_length;  // cum_length[0] = 0, strictly increasing

  double length() const { return cum_length.empty() ? 0.0 : cum_length.back(); }
  const Point2& start() const { return poses.front(); }
  const Point2& goal() const { return poses.back(); }

  // Point at cumulative arclength s (clamped to [0, length]).
  Point2 point_at(double s) const;

  // Distance from p to the path polyline.
  double distance_to(const Point2& p) const;
};

struct PlannerParams {
  // Minimum distance kept from occupied cells by search and smoothing.
  // Points within `clearance` of the start/goal are exempt so paths can
  // begin and end close to structure.
  double clearance = 0.25;
  // Resampled pose spacing as a multiple of grid resolution.
  double spacing_cells = 1.0;
};

// 8-connected A* with octile heuristic, shortcut smoothing, uniform
// resampling. Deterministic: ties broken toward the lower cell index.
// Throws std::runtime_error("unreachable goal") when no path exists.
GlobalPath plan_global(const OccupancyGrid& grid, const Point2& start, const Point2& goal,
                       const PlannerParams& params = {});

// Fit the path as a uniform cubic b-spline traversed at roughly
// nominal_speed (knot interval = pose spacing / nominal_speed); endpoints
// interpolated.
UniformBSpline parameterize(const GlobalPath& path, double nominal_speed, int degree = 3);

}  // namespace hiernav
