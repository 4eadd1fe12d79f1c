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

#include "bspline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hiernav {

namespace {

// knot(i) = (i - q) * dt
double knot(int i, int degree, double dt) { return (i - degree) * dt; }

}  // namespace

UniformBSpline::UniformBSpline(int degree, double dt, std::vector<Point2> control_points)
    : degree_(degree), dt_(dt), ctrl_(std::move(control_points)) {
  if (degree_ < 0) throw std::invalid_argument("spline degree must be >= 0");
  if (!(dt_ > 0.0)) throw std::invalid_argument("knot interval must be > 0");
  if (static_cast<int>(ctrl_.size()) < degree_ + 1)
    throw std::invalid_argument("need at least degree+1 control points");
}

Point2 UniformBSpline::evaluate(double t) const {
  const int n = static_cast<int>(ctrl_.size());
  const double t_end = domain_end();
  const double tol = 1e-9 * std::max(1.0, t_end);
  if (t < -tol || t > t_end + tol) throw std::out_of_range("parameter out of domain");
  t = std::clamp(t, 0.0, t_end);

  // Knot span k with t in [knot(k), knot(k+1)); the last span is closed.
  int k = degree_ + static_cast<int>(std::floor(t / dt_));
  k = std::clamp(k, degree_, n - 1);

  // De Boor recursion on the q+1 active control points.
  Point2 d[8];  // degree <= 7 is far beyond anything used here
  if (degree_ > 7) throw std::invalid_argument("spline degree too large");
  for (int j = 0; j <= degree_; ++j) d[j] = ctrl_[j + k - degree_];
  for (int r = 1; r <= degree_; ++r) {
    for (int j = degree_; j >= r; --j) {
      const double denom = (degree_ - r + 1) * dt_;
      const double alpha = (t - knot(j + k - degree_, degree_, dt_)) / denom;
      d[j] = d[j - 1] * (1.0 - alpha) + d[j] * alpha;
    }
  }
  return d[degree_];
}

UniformBSpline UniformBSpline::derivative() const {
  if (degree_ < 1) throw std::invalid_argument("cannot differentiate");
  if (ctrl_.size() < 2) throw std::invalid_argument("cannot differentiate");
  std::vector<Point2> diff(ctrl_.size() - 1);
  for (std::size_t i = 0; i + 1 < ctrl_.size(); ++i) diff[i] = (ctrl_[i + 1] - ctrl_[i]) / dt_;
  return UniformBSpline(degree_ - 1, dt_, std::move(diff));
}

void UniformBSpline::basis_at(double t, int& span, std::vector<double>& weights) const {
  const int n = static_cast<int>(ctrl_.size());
  const double t_end = domain_end();
  t = std::clamp(t, 0.0, t_end);
  int k = degree_ + static_cast<int>(std::floor(t / dt_));
  k = std::clamp(k, degree_, n - 1);
  span = k;

  // Cox-de Boor "basis funs" on uniform knots.
  weights.assign(degree_ + 1, 0.0);
  weights[0] = 1.0;
  std::vector<double> left(degree_ + 1, 0.0), right(degree_ + 1, 0.0);
  for (int j = 1; j <= degree_; ++j) {
    left[j] = t - knot(k + 1 - j, degree_, dt_);
    right[j] = knot(k + j, degree_, dt_) - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = weights[r] / (right[r + 1] + left[j - r]);
      weights[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    weights[j] = saved;
  }
}

KinoSample sample_kinematics(const UniformBSpline& spline, const UniformBSpline& vel_spline,
                             const UniformBSpline& acc_spline, double t) {
  KinoSample s;
  s.t = t;
  s.position = spline.evaluate(t);
  s.velocity = vel_spline.evaluate(t);
  s.acceleration = acc_spline.evaluate(t);
  return s;
}

SteeringProfile steering_profile(const UniformBSpline& spline, double sample_dt) {
  if (spline.degree() < 2) throw std::invalid_argument("steering needs spline degree >= 2");
  if (!(sample_dt > 0.0)) throw std::invalid_argument("sample_dt must be > 0");

  const UniformBSpline vel = spline.derivative();
  const UniformBSpline acc = vel.derivative();

  const double t_end = spline.domain_end();
  const int n = std::max(1, static_cast<int>(std::ceil(t_end / sample_dt)));

  SteeringProfile profile;
  profile.samples.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = std::min(t_end, i * sample_dt);
    SteeringSample s;
    s.t = t;
    s.position = spline.evaluate(t);
    const Point2 v = vel.evaluate(t);
    const Point2 a = acc.evaluate(t);
    const double speed = v.norm();
    s.omega = speed < kSteeringSpeedEpsilon ? 0.0 : std::abs(cross(v, a)) / (speed * speed);
    if (i == 0) {
      s.psi = 0.0;
    } else {
      const SteeringSample& prev = profile.samples.back();
      s.psi = prev.psi + 0.5 * (prev.omega + s.omega) * (t - prev.t);
    }
    profile.samples.push_back(s);
  }
  return profile;
}

UniformBSpline fit_uniform(const std::vector<Point2>& polyline, int degree, double dt) {
  if (polyline.size() < 2) throw std::invalid_argument("need at least 2 path points");
  if (degree < 1) throw std::invalid_argument("fit degree must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("knot interval must be > 0");

  const int n_pts = static_cast<int>(polyline.size());
  std::vector<double> cum(n_pts, 0.0);
  for (int i = 1; i < n_pts; ++i)
    cum[i] = cum[i - 1] + distance(polyline[i - 1], polyline[i]);
  const double total_len = cum.back();
  if (!(total_len > 1e-12)) throw std::invalid_argument("degenerate path");

  const int n_ctrl = n_pts + degree - 1;
  const double t_end = (n_ctrl - degree) * dt;

  // Dense arclength samples of the polyline keep the system overdetermined
  // regardless of how sparse the input poses are.
  const int n_samples = std::max(4 * n_ctrl, 2 * n_pts);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_samples, n_ctrl);
  Eigen::MatrixXd Y(n_samples, 2);
  UniformBSpline shape(degree, dt, std::vector<Point2>(n_ctrl));  // basis only
  std::vector<double> w;
  int span = 0;
  int seg = 0;
  for (int i = 0; i < n_samples; ++i) {
    const double s = total_len * i / (n_samples - 1);
    while (seg + 2 < n_pts && cum[seg + 1] < s) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double u = seg_len > 0.0 ? std::clamp((s - cum[seg]) / seg_len, 0.0, 1.0) : 0.0;
    const Point2 p = polyline[seg] + (polyline[seg + 1] - polyline[seg]) * u;
    Y(i, 0) = p.x;
    Y(i, 1) = p.y;
    shape.basis_at(s / total_len * t_end, span, w);
    for (int j = 0; j <= degree; ++j) A(i, span - degree + j) = w[j];
  }

  // Interpolation constraints at the domain ends.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2, n_ctrl);
  Eigen::MatrixXd D(2, 2);
  shape.basis_at(0.0, span, w);
  for (int j = 0; j <= degree; ++j) C(0, span - degree + j) = w[j];
  D(0, 0) = polyline.front().x;
  D(0, 1) = polyline.front().y;
  shape.basis_at(t_end, span, w);
  for (int j = 0; j <= degree; ++j) C(1, span - degree + j) = w[j];
  D(1, 0) = polyline.back().x;
  D(1, 1) = polyline.back().y;

  // min ||A P - Y||^2 + mu ||D2 P||^2  s.t.  C P = D, solved via KKT.
  // The light second-difference regularizer keeps the normal matrix full
  // rank when data samples cluster.
  Eigen::MatrixXd H = A.transpose() * A;
  const double mu = 1e-8 * n_samples;
  for (int i = 1; i + 1 < n_ctrl; ++i) {
    // row of D2: (..., 1, -2, 1, ...)
    const int idx[3] = {i - 1, i, i + 1};
    const double val[3] = {1.0, -2.0, 1.0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) H(idx[a], idx[b]) += mu * val[a] * val[b];
  }

  const int m = n_ctrl + 2;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  K.topLeftCorner(n_ctrl, n_ctrl) = H;
  K.topRightCorner(n_ctrl, 2) = C.transpose();
  K.bottomLeftCorner(2, n_ctrl) = C;
  Eigen::MatrixXd rhs(m, 2);
  rhs.topRows(n_ctrl) = A.transpose() * Y;
  rhs.bottomRows(2) = D;

  const Eigen::MatrixXd sol = K.colPivHouseholderQr().solve(rhs);

  std::vector<Point2> ctrl(n_ctrl);
  for (int i = 0; i < n_ctrl; ++i) ctrl[i] = {sol(i, 0), sol(i, 1)};
  return UniformBSpline(degree, dt, std::move(ctrl));
}

}  // namespace hiernav
