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

#include "geometry.hpp"

namespace hiernav {

// Uniform b-spline curve of degree q with knot interval dt.
//
// Knots are implied: knot(i) = (i - q)*dt, so the valid parameter domain is
// [0, (N - q)*dt] for N control points. The curve does not interpolate its
// end control points in general; fitting routines add interpolation
// constraints where endpoint clamping is required.
class UniformBSpline {
 public:
  UniformBSpline(int degree, double dt, std::vector<Point2> control_points);

  int degree() const { return degree_; }
  double knot_dt() const { return dt_; }
  const std::vector<Point2>& control_points() const { return ctrl_; }
  std::vector<Point2>& mutable_control_points() { return ctrl_; }

  double domain_start() const { return 0.0; }
  double domain_end() const { return (static_cast<int>(ctrl_.size()) - degree_) * dt_; }

  // De Boor evaluation. t must lie in [domain_start, domain_end].
  Point2 evaluate(double t) const;

  // Spline of degree q-1 with control points (p_{i+1}-p_i)/dt; same domain.
  UniformBSpline derivative() const;

  // Knot span index k and the q+1 non-vanishing basis values at t, so that
  // curve(t) = sum_i w[i] * ctrl[k - q + i]. Used by the least-squares fit.
  void basis_at(double t, int& span, std::vector<double>& weights) const;

 private:
  int degree_;
  double dt_;
  std::vector<Point2> ctrl_;
};

// Position/velocity/acceleration of a spline at parameter t.
struct KinoSample {
  double t = 0.0;
  Point2 position;
  Point2 velocity;
  Point2 acceleration;
};

KinoSample sample_kinematics(const UniformBSpline& spline, const UniformBSpline& vel_spline,
                             const UniformBSpline& acc_spline, double t);

// Angular rate and accumulated steering angle along a spline.
struct SteeringSample {
  double t = 0.0;
  Point2 position;
  double omega = 0.0;  // |v x a| / ||v||^2, rad/s
  double psi = 0.0;    // trapezoidal integral of omega, rad; 0 at first sample
};

struct SteeringProfile {
  std::vector<SteeringSample> samples;
  double total_psi() const { return samples.empty() ? 0.0 : samples.back().psi; }
};

// Division guard: samples with ||v|| below this get omega = 0.
inline constexpr double kSteeringSpeedEpsilon = 1e-4;

// Sample the steering kinematics of `spline` (degree >= 2) every sample_dt.
SteeringProfile steering_profile(const UniformBSpline& spline, double sample_dt);

// Least-squares fit of a uniform b-spline of `degree` through a polyline,
// with endpoint interpolation constraints (curve start/end match the
// polyline start/end). One control point per polyline vertex plus degree-1
// extras; chord-length parameter assignment.
//
// Throws std::invalid_argument("degenerate path") when the polyline has no
// extent.
UniformBSpline fit_uniform(const std::vector<Point2>& polyline, int degree, double dt);

}  // namespace hiernav
