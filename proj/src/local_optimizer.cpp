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

#include "local_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hiernav {

namespace {

struct NearestObstacle {
  double dist = std::numeric_limits<double>::infinity();
  bool dynamic = false;
  int dyn_index = -1;
  int cell_x = 0, cell_y = 0;
};

double point_to_cell_distance(const OccupancyGrid& grid, const Point2& p, int cx, int cy) {
  const double res = grid.resolution();
  const double x0 = grid.origin().x + cx * res;
  const double y0 = grid.origin().y + cy * res;
  const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + res)});
  const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + res)});
  return std::hypot(dx, dy);
}

// Nearest obstacle within `radius`; dynamic obstacles take precedence over
// static cells on exact ties, and lower indices win within each group.
NearestObstacle find_nearest(const Point2& p, const OccupancyGrid& grid,
                             const std::vector<DynamicObstacle>& obstacles, double radius) {
  NearestObstacle best;
  for (int i = 0; i < static_cast<int>(obstacles.size()); ++i) {
    const double d = distance(p, obstacles[i].center) - obstacles[i].radius;
    if (d < best.dist) {
      best.dist = d;
      best.dynamic = true;
      best.dyn_index = i;
    }
  }
  int pcx, pcy;
  grid.world_to_cell(p, pcx, pcy);
  const int r = static_cast<int>(std::ceil(radius / grid.resolution())) + 1;
  for (int cy = pcy - r; cy <= pcy + r; ++cy) {
    for (int cx = pcx - r; cx <= pcx + r; ++cx) {
      if (!grid.cell_occupied(cx, cy)) continue;
      if (!grid.in_bounds(cx, cy)) continue;  // border convention: skip virtual cells
      const double d = point_to_cell_distance(grid, p, cx, cy);
      if (d < best.dist) {
        best.dist = d;
        best.dynamic = false;
        best.cell_x = cx;
        best.cell_y = cy;
        best.dyn_index = -1;
      }
    }
  }
  return best;
}

int movable_first(const LocalTrajectory& traj) { return traj.spline.degree(); }
int movable_last(const LocalTrajectory& traj) {
  return static_cast<int>(traj.spline.control_points().size()) - traj.spline.degree() - 1;
}

double min_obstacle_distance(const Point2& p, const OccupancyGrid& grid,
                             const std::vector<DynamicObstacle>& obstacles, double radius) {
  double d = grid.distance_to_occupied(p, radius + grid.resolution());
  for (const DynamicObstacle& obs : obstacles)
    d = std::min(d, distance(p, obs.center) - obs.radius);
  return d;
}

}  // namespace

std::vector<std::pair<int, int>> detect_segments(const LocalTrajectory& traj,
                                                 const OccupancyGrid& grid,
                                                 const std::vector<DynamicObstacle>& obstacles,
                                                 const OptConfig& cfg) {
  const auto& ctrl = traj.spline.control_points();
  const int lo = movable_first(traj);
  const int hi = movable_last(traj);

  std::vector<std::pair<int, int>> segments;
  for (int i = lo; i <= hi; ++i) {
    const bool colliding =
        min_obstacle_distance(ctrl[i], grid, obstacles, cfg.safe_dist) < cfg.safe_dist;
    if (!colliding) continue;
    if (!segments.empty() && segments.back().second == i - 1)
      segments.back().second = i;
    else
      segments.emplace_back(i, i);
  }
  return segments;
}

LocalTrajectory assign_anchors(LocalTrajectory traj,
                               const std::vector<std::pair<int, int>>& segments,
                               const OccupancyGrid& grid,
                               const std::vector<DynamicObstacle>& obstacles,
                               const OptConfig& cfg) {
  traj.anchors.clear();
  const auto& ctrl = traj.spline.control_points();
  const double res = grid.resolution();

  for (const auto& [first, last] : segments) {
    for (int i = first; i <= last; ++i) {
      const NearestObstacle near = find_nearest(ctrl[i], grid, obstacles, cfg.safe_dist);
      if (!std::isfinite(near.dist)) continue;

      Anchor anchor;
      anchor.ctrl_index = i;
      if (near.dynamic) {
        const DynamicObstacle& obs = obstacles[near.dyn_index];
        Point2 u = ctrl[i] - obs.center;
        if (u.norm() < 1e-12) u = {res * 0.1, 0.0};  // point at center: nudge +x
        anchor.direction = normalized(u);
        anchor.point = obs.center + anchor.direction * obs.radius;
      } else {
        const Point2 c = grid.cell_center(near.cell_x, near.cell_y);
        Point2 u = ctrl[i] - c;
        if (std::max(std::abs(u.x), std::abs(u.y)) < 1e-12) u = {res * 0.1, 0.0};
        // Exit point of the ray center->Q through the cell boundary.
        const double s = (res * 0.5) / std::max(std::abs(u.x), std::abs(u.y));
        anchor.point = c + u * s;
        anchor.direction = normalized(u);
      }
      traj.anchors.push_back(anchor);
    }
  }
  return traj;
}

std::pair<double, std::vector<Point2>> cost_and_grad(const LocalTrajectory& traj,
                                                     const OptConfig& cfg) {
  const auto& p = traj.spline.control_points();
  const int n = static_cast<int>(p.size());
  const int q = traj.spline.degree();
  const double dt = traj.spline.knot_dt();

  double cost = 0.0;
  std::vector<Point2> grad(n, Point2{0.0, 0.0});

  // Smoothness: squared second differences.
  for (int i = 1; i + 1 < n; ++i) {
    const Point2 d2 = p[i - 1] - p[i] * 2.0 + p[i + 1];
    cost += cfg.w_smooth * d2.squared_norm();
    const Point2 g = d2 * (2.0 * cfg.w_smooth);
    grad[i - 1] += g;
    grad[i] -= g * 2.0;
    grad[i + 1] += g;
  }

  // Collision: cubic penalty on safe_dist - d_j, d_j = dot(Q - anchor, dir).
  for (const Anchor& a : traj.anchors) {
    const double d = dot(p[a.ctrl_index] - a.point, a.direction);
    const double x = cfg.safe_dist - d;
    if (x > 0.0) {
      cost += cfg.w_collision * x * x * x;
      grad[a.ctrl_index] -= a.direction * (3.0 * cfg.w_collision * x * x);
    }
  }

  // Feasibility: velocity and acceleration magnitude overshoot.
  for (int i = 0; i + 1 < n; ++i) {
    const Point2 v = (p[i + 1] - p[i]) / dt;
    const double speed = v.norm();
    const double over = speed - cfg.v_max;
    if (over > 0.0 && speed > 1e-12) {
      cost += cfg.w_feasible * over * over;
      const Point2 g = v * (2.0 * cfg.w_feasible * over / (speed * dt));
      grad[i + 1] += g;
      grad[i] -= g;
    }
  }
  for (int i = 0; i + 2 < n; ++i) {
    const Point2 a = (p[i + 2] - p[i + 1] * 2.0 + p[i]) / (dt * dt);
    const double mag = a.norm();
    const double over = mag - cfg.a_max;
    if (over > 0.0 && mag > 1e-12) {
      cost += cfg.w_feasible * over * over;
      const Point2 g = a * (2.0 * cfg.w_feasible * over / (mag * dt * dt));
      grad[i] += g;
      grad[i + 1] -= g * 2.0;
      grad[i + 2] += g;
    }
  }

  // Endpoint pinning.
  for (int i = 0; i < n; ++i)
    if (i < q || i >= n - q) grad[i] = {0.0, 0.0};

  return {cost, std::move(grad)};
}

namespace {

// Curve clears every dynamic obstacle by >= safe_dist and stays out of
// occupied cells, at dense samples.
bool dense_clear(const UniformBSpline& spline, const OccupancyGrid& grid,
                 const std::vector<DynamicObstacle>& obstacles, double safe_dist) {
  const int n_samples = 20 * static_cast<int>(spline.control_points().size());
  const double t_end = spline.domain_end();
  for (int i = 0; i <= n_samples; ++i) {
    const Point2 pt = spline.evaluate(t_end * i / n_samples);
    if (grid.is_occupied(pt)) return false;
    for (const DynamicObstacle& obs : obstacles)
      if (distance(pt, obs.center) - obs.radius < safe_dist) return false;
  }
  return true;
}

double movable_grad_norm(const std::vector<Point2>& grad) {
  double s = 0.0;
  for (const Point2& g : grad) s += g.squared_norm();
  return std::sqrt(s);
}

}  // namespace

ReboundResult rebound_optimize(const LocalTrajectory& init, const OccupancyGrid& grid,
                               const std::vector<DynamicObstacle>& obstacles,
                               const OptConfig& cfg) {
  ReboundResult result{init, false, 0};

  if (detect_segments(init, grid, obstacles, cfg).empty() &&
      dense_clear(init.spline, grid, obstacles, cfg.safe_dist)) {
    result.success = true;
    return result;  // fixed point: input returned unchanged
  }

  // The cubic penalty has zero gradient exactly at the clearance boundary,
  // so the smoothness tension settles control points slightly inside it.
  // Optimize against an inflated clearance and escalate the margin until
  // dense samples of the curve actually clear.
  double margin = 0.05;
  OptConfig work = cfg;
  work.safe_dist = cfg.safe_dist + margin;

  LocalTrajectory traj = init;
  int best_colliding = std::numeric_limits<int>::max();

  while (result.iterations < cfg.max_iters) {
    ++result.iterations;
    const auto segments = detect_segments(traj, grid, obstacles, work);

    int colliding = 0;
    for (const auto& [a, b] : segments) colliding += b - a + 1;
    if (colliding <= best_colliding) {
      best_colliding = colliding;
      result.trajectory = traj;
    }

    if (segments.empty()) {
      if (dense_clear(traj.spline, grid, obstacles, cfg.safe_dist)) {
        result.trajectory = traj;
        result.success = true;
        return result;
      }
      margin += 0.05;
      work.safe_dist = cfg.safe_dist + margin;
      continue;
    }

    traj = assign_anchors(std::move(traj), segments, grid, obstacles, work);
    auto [cost, grad] = cost_and_grad(traj, work);
    const double gnorm = movable_grad_norm(grad);
    if (gnorm < 1e-12) break;  // stationary but still colliding

    double max_pt = 0.0;
    for (const Point2& g : grad) max_pt = std::max(max_pt, g.norm());
    double alpha = 0.1 / max_pt;  // cap per-point displacement at 0.1 m

    // Backtracking (Armijo) with anchors frozen for the search.
    bool accepted = false;
    LocalTrajectory candidate = traj;
    for (int ls = 0; ls < 30; ++ls) {
      auto& cpts = candidate.spline.mutable_control_points();
      const auto& base = traj.spline.control_points();
      for (std::size_t i = 0; i < cpts.size(); ++i) cpts[i] = base[i] - grad[i] * alpha;
      const double new_cost = cost_and_grad(candidate, work).first;
      if (new_cost <= cost - 1e-4 * alpha * gnorm * gnorm) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search exhausted

    traj = std::move(candidate);
    const double step_norm = alpha * gnorm;
    if (step_norm < cfg.step_tol && detect_segments(traj, grid, obstacles, work).empty() &&
        dense_clear(traj.spline, grid, obstacles, cfg.safe_dist)) {
      result.trajectory = traj;
      result.success = true;
      return result;
    }
  }

  return result;  // optimization failed: best iterate, success = false
}

}  // namespace hiernav
