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

#include "global_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace hiernav {

Point2 GlobalPath::point_at(double s) const {
  if (poses.empty()) return {};
  if (s <= 0.0) return poses.front();
  if (s >= cum_length.back()) return poses.back();
  const auto it = std::upper_bound(cum_length.begin(), cum_length.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - cum_length.begin());
  const double seg = cum_length[i] - cum_length[i - 1];
  const double u = seg > 0.0 ? (s - cum_length[i - 1]) / seg : 0.0;
  return poses[i - 1] + (poses[i] - poses[i - 1]) * u;
}

double GlobalPath::distance_to(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poses.size(); ++i)
    best = std::min(best, distance(p, closest_point_on_segment(poses[i], poses[i + 1], p)));
  if (poses.size() == 1) best = distance(p, poses[0]);
  return best;
}

namespace {

struct SearchContext {
  const OccupancyGrid& grid;
  PlannerParams params;
  int start_idx;
  int goal_idx;
  Point2 start_center;
  Point2 goal_center;

  bool passable(int cx, int cy) const {
    if (!grid.in_bounds(cx, cy) || grid.cell_occupied(cx, cy)) return false;
    if (params.clearance <= 0.0) return true;
    const Point2 c = grid.cell_center(cx, cy);
    if (grid.disk_free(c, params.clearance)) return true;
    // Allow squeezing near the endpoints so tight starts/goals stay solvable.
    return distance(c, start_center) <= params.clearance + grid.resolution() ||
           distance(c, goal_center) <= params.clearance + grid.resolution();
  }
};

// Segment a->b keeps `clearance` from occupied cells, sampled at res/2.
// Falls back to plain raycast freedom when clearance is 0.
bool segment_clear(const OccupancyGrid& grid, const Point2& a, const Point2& b,
                   double clearance) {
  if (clearance <= 0.0) return grid.raycast_free(a, b);
  const double step = grid.resolution() * 0.5;
  const int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / step)));
  for (int i = 0; i <= n; ++i) {
    const Point2 p = a + (b - a) * (static_cast<double>(i) / n);
    if (!grid.disk_free(p, clearance)) return false;
  }
  return true;
}

std::vector<Point2> astar_cells(const SearchContext& ctx) {
  const OccupancyGrid& grid = ctx.grid;
  const int w = grid.width();
  const int h = grid.height();
  const double res = grid.resolution();
  const double kDiag = std::sqrt(2.0);

  std::vector<double> g(static_cast<std::size_t>(w) * h,
                        std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::uint8_t> closed(static_cast<std::size_t>(w) * h, 0);

  const auto heuristic = [&](int idx) {
    const int dx = std::abs(idx % w - ctx.goal_idx % w);
    const int dy = std::abs(idx / w - ctx.goal_idx / w);
    return (std::max(dx, dy) + (kDiag - 1.0) * std::min(dx, dy)) * res;
  };

  // Ordered by (f, cell index): lower index wins ties for determinism.
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  g[ctx.start_idx] = 0.0;
  open.emplace(heuristic(ctx.start_idx), ctx.start_idx);

  static const int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static const int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};

  while (!open.empty()) {
    const auto [f, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == ctx.goal_idx) break;
    const int cx = idx % w;
    const int cy = idx / w;
    for (int k = 0; k < 8; ++k) {
      const int nx = cx + dxs[k];
      const int ny = cy + dys[k];
      if (!ctx.passable(nx, ny)) continue;
      // No corner cutting through diagonal moves.
      if (dxs[k] != 0 && dys[k] != 0 &&
          (!ctx.passable(cx + dxs[k], cy) || !ctx.passable(cx, cy + dys[k])))
        continue;
      const int nidx = ny * w + nx;
      if (closed[nidx]) continue;
      const double cost = (dxs[k] != 0 && dys[k] != 0 ? kDiag : 1.0) * res;
      if (g[idx] + cost < g[nidx]) {
        g[nidx] = g[idx] + cost;
        parent[nidx] = idx;
        open.emplace(g[nidx] + heuristic(nidx), nidx);
      }
    }
  }

  if (!closed[ctx.goal_idx]) throw std::runtime_error("unreachable goal");

  std::vector<Point2> cells;
  for (int idx = ctx.goal_idx; idx != -1; idx = parent[idx])
    cells.push_back(grid.cell_center(idx % w, idx / w));
  std::reverse(cells.begin(), cells.end());
  return cells;
}

std::vector<Point2> shortcut(const OccupancyGrid& grid, const std::vector<Point2>& pts,
                             double clearance) {
  if (pts.size() <= 2) return pts;
  std::vector<Point2> out;
  out.push_back(pts.front());
  std::size_t i = 0;
  while (i + 1 < pts.size()) {
    std::size_t j = pts.size() - 1;
    while (j > i + 1 && !segment_clear(grid, pts[i], pts[j], clearance)) --j;
    out.push_back(pts[j]);
    i = j;
  }
  return out;
}

}  // namespace

GlobalPath plan_global(const OccupancyGrid& grid, const Point2& start, const Point2& goal,
                       const PlannerParams& params) {
  if (!is_finite(start) || !is_finite(goal))
    throw std::invalid_argument("start/goal must be finite");
  if (grid.is_occupied(start)) throw std::invalid_argument("start is occupied");
  if (grid.is_occupied(goal)) throw std::invalid_argument("goal is occupied");
  if (distance(start, goal) < 1e-9) throw std::invalid_argument("degenerate path");

  int scx, scy, gcx, gcy;
  grid.world_to_cell(start, scx, scy);
  grid.world_to_cell(goal, gcx, gcy);
  SearchContext ctx{grid, params, scy * grid.width() + scx, gcy * grid.width() + gcx,
                    grid.cell_center(scx, scy), grid.cell_center(gcx, gcy)};

  std::vector<Point2> pts;
  if (ctx.start_idx == ctx.goal_idx) {
    pts = {start, goal};
  } else {
    pts = astar_cells(ctx);
    pts.front() = start;
    pts.back() = goal;
    pts = shortcut(grid, pts, params.clearance);
  }

  // Uniform resampling at spacing_cells * resolution.
  const double spacing = params.spacing_cells * grid.resolution();
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  const double total = cum.back();

  GlobalPath path;
  const int n = std::max(1, static_cast<int>(std::round(total / spacing)));
  path.poses.reserve(n + 1);
  std::size_t seg = 0;
  for (int i = 0; i <= n; ++i) {
    const double s = total * i / n;
    while (seg + 2 < pts.size() && cum[seg + 1] < s) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double u = seg_len > 0.0 ? std::clamp((s - cum[seg]) / seg_len, 0.0, 1.0) : 0.0;
    path.poses.push_back(pts[seg] + (pts[seg + 1] - pts[seg]) * u);
  }
  path.poses.back() = goal;

  path.cum_length.resize(path.poses.size(), 0.0);
  for (std::size_t i = 1; i < path.poses.size(); ++i)
    path.cum_length[i] = path.cum_length[i - 1] + distance(path.poses[i - 1], path.poses[i]);
  return path;
}

UniformBSpline parameterize(const GlobalPath& path, double nominal_speed, int degree) {
  if (path.poses.size() < 2) throw std::invalid_argument("need at least 2 path points");
  if (!(nominal_speed > 0.0)) throw std::invalid_argument("nominal_speed must be > 0");
  const double mean_spacing = path.length() / (static_cast<double>(path.poses.size()) - 1);
  const double dt = mean_spacing / nominal_speed;
  return fit_uniform(path.poses, degree, dt);
}

}  // namespace hiernav
