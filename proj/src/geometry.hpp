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

#include <cmath>

namespace hiernav {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double x_, double y_) : x(x_), y(y_) {}

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  Point2 operator/(double s) const { return {x / s, y / s}; }
  Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

// Scalar 2D cross product (z component of the 3D cross).
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

// Left-hand perpendicular (rotation by +90 degrees).
inline Point2 perp_left(const Point2& p) { return {-p.y, p.x}; }

inline Point2 normalized(const Point2& p, double eps = 1e-12) {
  const double n = p.norm();
  if (n < eps) return {0.0, 0.0};
  return p / n;
}

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Nearest point on segment [a,b] to p, and the segment parameter in [0,1].
inline Point2 closest_point_on_segment(const Point2& a, const Point2& b, const Point2& p,
                                       double* t_out = nullptr) {
  const Point2 ab = b - a;
  const double len2 = ab.squared_norm();
  double t = 0.0;
  if (len2 > 0.0) {
    t = dot(p - a, ab) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
  }
  if (t_out) *t_out = t;
  return a + ab * t;
}

}  // namespace hiernav
