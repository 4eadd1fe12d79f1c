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

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "occupancy_grid.hpp"

namespace hiernav {

enum class MotionModel {
  kLinearBounce,   // constant velocity, specular reflection on wall contact
  kWaypointLoop,   // cycles through randomly drawn free waypoints
};

struct DynamicObstacle {
  Point2 center;
  double radius = 0.3;
  Point2 velocity;       // ||velocity|| stays at the scenario's v_obs
  MotionModel motion = MotionModel::kLinearBounce;
  std::vector<Point2> loop_points;  // waypoint-loop targets
  int loop_index = 0;
};

// Advance every obstacle by velocity*dt. Linear-bounce obstacles reflect
// off walls axis-wise; waypoint-loop obstacles re-aim at the next target
// when within half a radius of the current one. Speed is conserved.
void step_obstacles(std::vector<DynamicObstacle>& obstacles, double dt,
                    const OccupancyGrid& grid);

// Deterministic population: obstacle i is drawn from sub-stream i of `seed`
// (split_seed), so the first k obstacles of an n>k population are identical
// to the k-obstacle population of the same seed. Spawn positions are free
// with `radius` clearance and at least keepout_dist from every keepout point.
std::vector<DynamicObstacle> spawn_obstacles(const OccupancyGrid& grid, int count, double v_obs,
                                             MotionModel motion, std::uint64_t seed,
                                             const std::vector<Point2>& keepout,
                                             double keepout_dist = 1.5, double radius = 0.3);

// Surface-to-surface distance between a disk robot and an obstacle.
inline double surface_distance(const Point2& p, double robot_radius,
                               const DynamicObstacle& obs) {
  return distance(p, obs.center) - robot_radius - obs.radius;
}

}  // namespace hiernav
