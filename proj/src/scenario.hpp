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
#include <memory>
#include <string>

#include "obstacles.hpp"
#include "occupancy_grid.hpp"

namespace hiernav {

// One simulation setup: a static map plus start/goal and the dynamic
// obstacle population parameters.
struct Scenario {
  std::shared_ptr<const OccupancyGrid> map;
  std::string map_path;  // as referenced by the scenario file, for reports
  Point2 start;
  Point2 goal;
  int obstacle_count = 0;
  double v_obs = 0.3;
  MotionModel motion = MotionModel::kLinearBounce;
  std::uint64_t seed = 0;

  // Draw the obstacle population for this scenario (keeps start/goal clear).
  std::vector<DynamicObstacle> spawn() const;

  void validate() const;  // start/goal free, counts sane

  // key:value text file; '#' starts a comment. Relative map paths resolve
  // against the scenario file's directory.
  static Scenario load(const std::string& path);
};

MotionModel motion_model_from_string(const std::string& name);
const char* motion_model_name(MotionModel m);

}  // namespace hiernav
