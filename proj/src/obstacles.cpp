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

#include "obstacles.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace hiernav {

namespace {

bool disk_position_ok(const OccupancyGrid& grid, const Point2& p, double radius) {
  return !grid.is_occupied(p) && grid.disk_free(p, radius);
}

void step_linear_bounce(DynamicObstacle& obs, double dt, const OccupancyGrid& grid) {
  Point2 next = obs.center + obs.velocity * dt;
  if (disk_position_ok(grid, next, obs.radius)) {
    obs.center = next;
    return;
  }
  // Reflect per axis: flip the component whose motion is blocked.
  const Point2 x_only{obs.center.x + obs.velocity.x * dt, obs.center.y};
  const Point2 y_only{obs.center.x, obs.center.y + obs.velocity.y * dt};
  const bool x_ok = disk_position_ok(grid, x_only, obs.radius);
  const bool y_ok = disk_position_ok(grid, y_only, obs.radius);
  if (!x_ok) obs.velocity.x = -obs.velocity.x;
  if (!y_ok) obs.velocity.y = -obs.velocity.y;
  if (x_ok && y_ok) {
    // Blocked only diagonally (corner); reverse both.
    obs.velocity.x = -obs.velocity.x;
    obs.velocity.y = -obs.velocity.y;
  }
  next = obs.center + obs.velocity * dt;
  if (disk_position_ok(grid, next, obs.radius)) obs.center = next;
  // else stay put this step; velocity already flipped for the next one
}

void step_waypoint_loop(DynamicObstacle& obs, double dt, const OccupancyGrid& grid) {
  if (obs.loop_points.empty()) {
    step_linear_bounce(obs, dt, grid);
    return;
  }
  const double speed = obs.velocity.norm();
  const Point2& target = obs.loop_points[obs.loop_index];
  if (distance(obs.center, target) < 0.5 * obs.radius)
    obs.loop_index = (obs.loop_index + 1) % static_cast<int>(obs.loop_points.size());
  const Point2 dir = normalized(obs.loop_points[obs.loop_index] - obs.center);
  if (dir.norm() > 0.5) obs.velocity = dir * speed;
  const Point2 next = obs.center + obs.velocity * dt;
  if (disk_position_ok(grid, next, obs.radius)) {
    obs.center = next;
  } else {
    // Wall in the way of the leg; skip to the next target.
    obs.loop_index = (obs.loop_index + 1) % static_cast<int>(obs.loop_points.size());
  }
}

}  // namespace

void step_obstacles(std::vector<DynamicObstacle>& obstacles, double dt,
                    const OccupancyGrid& grid) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  for (DynamicObstacle& obs : obstacles) {
    switch (obs.motion) {
      case MotionModel::kLinearBounce:
        step_linear_bounce(obs, dt, grid);
        break;
      case MotionModel::kWaypointLoop:
        step_waypoint_loop(obs, dt, grid);
        break;
    }
  }
}

std::vector<DynamicObstacle> spawn_obstacles(const OccupancyGrid& grid, int count, double v_obs,
                                             MotionModel motion, std::uint64_t seed,
                                             const std::vector<Point2>& keepout,
                                             double keepout_dist, double radius) {
  const Point2 lo = grid.min_corner();
  const Point2 hi = grid.max_corner();

  std::vector<DynamicObstacle> obstacles;
  obstacles.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    DynamicObstacle obs;
    obs.radius = radius;
    obs.motion = motion;

    const auto draw_free_point = [&]() -> Point2 {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        Point2 p{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
        if (!disk_position_ok(grid, p, radius)) continue;
        bool clear = true;
        for (const Point2& k : keepout)
          if (distance(p, k) < keepout_dist) {
            clear = false;
            break;
          }
        if (clear) return p;
      }
      throw std::runtime_error("could not place obstacle: map too crowded");
    };

    obs.center = draw_free_point();
    const double heading = rng.uniform(0.0, 2.0 * M_PI);
    obs.velocity = Point2{std::cos(heading), std::sin(heading)} * v_obs;
    if (motion == MotionModel::kWaypointLoop) {
      const int n_pts = 2 + static_cast<int>(rng.uniform_index(3));  // 2..4 targets
      for (int j = 0; j < n_pts; ++j) obs.loop_points.push_back(draw_free_point());
    }
    obstacles.push_back(std::move(obs));
  }
  return obstacles;
}

}  // namespace hiernav
