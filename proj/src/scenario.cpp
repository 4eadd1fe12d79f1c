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

#include "scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hiernav {

std::vector<DynamicObstacle> Scenario::spawn() const {
  return spawn_obstacles(*map, obstacle_count, v_obs, motion, seed, {start, goal});
}

void Scenario::validate() const {
  if (!map) throw std::invalid_argument("scenario: no map loaded");
  if (map->is_occupied(start)) throw std::invalid_argument("scenario: start is occupied");
  if (map->is_occupied(goal)) throw std::invalid_argument("scenario: goal is occupied");
  if (obstacle_count < 0) throw std::invalid_argument("scenario: obstacle count < 0");
  if (v_obs < 0.0) throw std::invalid_argument("scenario: v_obs < 0");
}

MotionModel motion_model_from_string(const std::string& name) {
  if (name == "linear-bounce") return MotionModel::kLinearBounce;
  if (name == "waypoint-loop") return MotionModel::kWaypointLoop;
  throw std::invalid_argument("unknown motion model '" + name +
                              "' (expected linear-bounce or waypoint-loop)");
}

const char* motion_model_name(MotionModel m) {
  switch (m) {
    case MotionModel::kLinearBounce:
      return "linear-bounce";
    case MotionModel::kWaypointLoop:
      return "waypoint-loop";
  }
  return "?";
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);

  Scenario sc;
  bool have_map = false, have_start = false, have_goal = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("scenario '" + path + "' line " + std::to_string(line_no) +
                               ": expected key: value");
    std::string key = line.substr(first, colon - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::istringstream value(line.substr(colon + 1));

    const auto fail = [&](const std::string& what) {
      throw std::runtime_error("scenario '" + path + "': field '" + key + "': " + what);
    };

    if (key == "map") {
      std::string map_path;
      value >> map_path;
      if (map_path.empty()) fail("missing path");
      std::filesystem::path p(map_path);
      if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
      sc.map = std::make_shared<OccupancyGrid>(OccupancyGrid::load(p.string()));
      sc.map_path = map_path;
      have_map = true;
    } else if (key == "start") {
      if (!(value >> sc.start.x >> sc.start.y)) fail("expected two numbers");
      have_start = true;
    } else if (key == "goal") {
      if (!(value >> sc.goal.x >> sc.goal.y)) fail("expected two numbers");
      have_goal = true;
    } else if (key == "obstacles") {
      if (!(value >> sc.obstacle_count)) fail("expected integer");
    } else if (key == "v_obs") {
      if (!(value >> sc.v_obs)) fail("expected number");
    } else if (key == "motion") {
      std::string name;
      value >> name;
      sc.motion = motion_model_from_string(name);
    } else if (key == "seed") {
      if (!(value >> sc.seed)) fail("expected integer");
    } else {
      fail("unknown key");
    }
  }
  if (!have_map) throw std::runtime_error("scenario '" + path + "': field 'map' is required");
  if (!have_start) throw std::runtime_error("scenario '" + path + "': field 'start' is required");
  if (!have_goal) throw std::runtime_error("scenario '" + path + "': field 'goal' is required");
  sc.validate();
  return sc;
}

}  // namespace hiernav
