/*
 * Copyright 2026 The Semloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEMLOC_POSE_HPP_
#define SEMLOC_POSE_HPP_

#include <Eigen/Dense>

#include "semloc/angles.hpp"

namespace semloc {

// Planar robot pose (x, y, theta), theta normalized to (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2() = default;
  Pose2(double x_, double y_, double theta_)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Eigen::Vector2d translation() const { return {x, y}; }

  // Composition: applies `delta` expressed in this pose's frame.
  Pose2 compose(const Pose2& delta) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {x + c * delta.x - s * delta.y, y + s * delta.x + c * delta.y,
            theta + delta.theta};
  }

  // Relative pose from this to `other`, expressed in this pose's frame.
  Pose2 relative_to(const Pose2& other) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double dx = other.x - x;
    const double dy = other.y - y;
    return {c * dx + s * dy, -s * dx + c * dy, other.theta - theta};
  }

  Eigen::Matrix2d rotation2() const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
  }
};

// Rigid transform in 3D. For cameras this stores world->camera, i.e.
// p_cam = rotation * p_world + translation.
struct Pose3 {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Pose3() = default;
  Pose3(const Eigen::Matrix3d& r, const Eigen::Vector3d& t)
      : rotation(r), translation(t) {}

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  Pose3 inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }

  // this ∘ other: (this * other).apply(p) == this.apply(other.apply(p)).
  Pose3 operator*(const Pose3& other) const {
    return {rotation * other.rotation,
            rotation * other.translation + translation};
  }

  // Deviation from SO(3), |R R^T - I|_max combined with |det - 1|.
  double rotation_residual() const {
    const Eigen::Matrix3d e =
        rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
    return std::max(e.cwiseAbs().maxCoeff(),
                    std::abs(rotation.determinant() - 1.0));
  }

  bool rotation_valid(double tol = 1e-6) const {
    return rotation_residual() < tol;
  }
};

// Lifts a planar pose to 3D (z = 0, yaw-only rotation), mapping points from
// the pose's local frame into the world frame.
inline Pose3 lift_to_3d(const Pose2& pose) {
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  Eigen::Matrix3d r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return {r, {pose.x, pose.y, 0.0}};
}

inline Eigen::Matrix3d yaw_rotation(double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  Eigen::Matrix3d r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

inline Eigen::Matrix2d yaw_rotation2(double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

}  // namespace semloc

#endif  // SEMLOC_POSE_HPP_
