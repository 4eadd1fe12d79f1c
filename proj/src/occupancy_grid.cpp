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

#include "occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hiernav {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, Point2 origin,
                             std::vector<std::uint8_t> cells)
    : width_(width), height_(height), resolution_(resolution), origin_(origin),
      cells_(std::move(cells)) {
  if (width_ < 1 || height_ < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  if (!(resolution_ > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
  if (cells_.size() != static_cast<std::size_t>(width_) * height_)
    throw std::invalid_argument("grid cell buffer size mismatch");
}

OccupancyGrid OccupancyGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

OccupancyGrid OccupancyGrid::parse(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("map '" + source_name + "': missing header line");
  std::istringstream hs(header);
  int width = 0, height = 0;
  double resolution = 0.0, ox = 0.0, oy = 0.0;
  if (!(hs >> width >> height >> resolution >> ox >> oy))
    throw std::runtime_error("map '" + source_name +
                             "': header must be 'width height resolution origin_x origin_y'");
  if (width < 1 || height < 1)
    throw std::runtime_error("map '" + source_name + "': width/height must be >= 1");
  if (!(resolution > 0.0))
    throw std::runtime_error("map '" + source_name + "': resolution must be > 0");

  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
  for (int row = 0; row < height; ++row) {
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error("map '" + source_name + "': expected " + std::to_string(height) +
                               " rows, got " + std::to_string(row));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != width)
      throw std::runtime_error("map '" + source_name + "': row " + std::to_string(row) +
                               " has width " + std::to_string(line.size()) + ", expected " +
                               std::to_string(width));
    for (int col = 0; col < width; ++col) {
      const char c = line[col];
      if (c == '#')
        cells[static_cast<std::size_t>(row) * width + col] = 1;
      else if (c != '.')
        throw std::runtime_error("map '" + source_name + "': row " + std::to_string(row) +
                                 " col " + std::to_string(col) + ": invalid char '" +
                                 std::string(1, c) + "'");
    }
  }
  return OccupancyGrid(width, height, resolution, Point2{ox, oy}, std::move(cells));
}

void OccupancyGrid::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write map file: " + path);
  out << width_ << ' ' << height_ << ' ' << resolution_ << ' ' << origin_.x << ' ' << origin_.y
      << '\n';
  for (int row = 0; row < height_; ++row) {
    for (int col = 0; col < width_; ++col)
      out << (cells_[static_cast<std::size_t>(row) * width_ + col] ? '#' : '.');
    out << '\n';
  }
}

void OccupancyGrid::world_to_cell(const Point2& p, int& cx, int& cy) const {
  cx = static_cast<int>(std::floor((p.x - origin_.x) / resolution_));
  cy = static_cast<int>(std::floor((p.y - origin_.y) / resolution_));
}

Point2 OccupancyGrid::cell_center(int cx, int cy) const {
  return {origin_.x + (cx + 0.5) * resolution_, origin_.y + (cy + 0.5) * resolution_};
}

bool OccupancyGrid::is_occupied(const Point2& p) const {
  int cx, cy;
  world_to_cell(p, cx, cy);
  return cell_occupied(cx, cy);
}

bool OccupancyGrid::raycast_free(const Point2& a, const Point2& b) const {
  const double len = distance(a, b);
  const double step = resolution_ * 0.5;
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (is_occupied(a + (b - a) * t)) return false;
  }
  return true;
}

double OccupancyGrid::distance_to_occupied(const Point2& p, double max_radius) const {
  int pcx, pcy;
  world_to_cell(p, pcx, pcy);
  const int r = static_cast<int>(std::ceil(max_radius / resolution_)) + 1;
  double best = max_radius;
  for (int cy = pcy - r; cy <= pcy + r; ++cy) {
    for (int cx = pcx - r; cx <= pcx + r; ++cx) {
      if (!cell_occupied(cx, cy)) continue;
      const double x0 = origin_.x + cx * resolution_;
      const double y0 = origin_.y + cy * resolution_;
      const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + resolution_)});
      const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + resolution_)});
      best = std::min(best, std::hypot(dx, dy));
    }
  }
  return best;
}

}  // namespace hiernav
