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

#include <utility>
#include <vector>

#include "bspline.hpp"
#include "obstacles.hpp"
#include "occupancy_grid.hpp"

namespace hiernav {

// A control point's tether to the obstacle it must escape: the nearest
// surface point along the ray from the obstacle center through the control
// point, plus the outward unit direction. Distance-to-freedom of a control
// point Q is dot(Q - point, direction).
struct Anchor {
  int ctrl_index = 0;
  Point2 point;
  Point2 direction;  // unit, away from the obstacle interior
};

struct LocalTrajectory {
  UniformBSpline spline;
  std::vector<Anchor> anchors;
};

struct OptConfig {
  double w_smooth = 1.0;
  double w_collision = 10.0;
  double w_feasible = 1.0;
  double safe_dist = 0.3;   // required obstacle clearance, meters
  int max_iters = 100;
  double step_tol = 1e-4;   // stop when the accepted step norm drops below
  double v_max = 2.0;
  double a_max = 3.0;
};

// Contiguous [first, last] control-point index ranges within cfg.safe_dist
// of any obstacle (static cell or dynamic circle at its current position).
// Only movable indices are considered: the first/last q control points are
// boundary conditions (they encode the robot's own pose and the target) and
// are exempt.
std::vector<std::pair<int, int>> detect_segments(const LocalTrajectory& traj,
                                                 const OccupancyGrid& grid,
                                                 const std::vector<DynamicObstacle>& obstacles,
                                                 const OptConfig& cfg);

// Attach an anchor to every control point inside the given ranges, against
// its nearest obstacle. Ties between equidistant obstacles break toward the
// lower obstacle index (dynamic obstacles first, then static cells in
// row-major order). A control point exactly on an obstacle center is
// perturbed by resolution/10 along +x before anchoring.
LocalTrajectory assign_anchors(LocalTrajectory traj,
                               const std::vector<std::pair<int, int>>& segments,
                               const OccupancyGrid& grid,
                               const std::vector<DynamicObstacle>& obstacles,
                               const OptConfig& cfg);

// cost = w_smooth * sum ||p_{i-1} - 2 p_i + p_{i+1}||^2
//      + w_collision * sum_anchors penalty(safe_dist - d_j),  penalty(x) = x^3 for x > 0
//      + w_feasible * sum max(0, ||v_i|| - v_max)^2 + max(0, ||a_i|| - a_max)^2
// grad is the exact analytic gradient; the first and last q control points
// are pinned (zero gradient).
std::pair<double, std::vector<Point2>> cost_and_grad(const LocalTrajectory& traj,
                                                     const OptConfig& cfg);

struct ReboundResult {
  LocalTrajectory trajectory;  // best iterate, optimized on success
  bool success = false;
  int iterations = 0;
};

// Iterate {detect -> anchor -> gradient descent with backtracking} until the
// movable control points are clear and the step norm falls below step_tol,
// or max_iters is exhausted ("optimization failed": best iterate returned,
// caller decides the fallback). On success the curve clears every dynamic
// obstacle by >= safe_dist at dense samples, stays out of occupied cells,
// and keeps the endpoints of the input bitwise intact. A collision-free
// input is returned unchanged.
ReboundResult rebound_optimize(const LocalTrajectory& init, const OccupancyGrid& grid,
                               const std::vector<DynamicObstacle>& obstacles,
                               const OptConfig& cfg);

}  // namespace hiernav
