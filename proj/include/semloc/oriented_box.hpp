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

#ifndef SEMLOC_ORIENTED_BOX_HPP_
#define SEMLOC_ORIENTED_BOX_HPP_

#include <array>

#include <Eigen/Dense>

#include "semloc/pose.hpp"

namespace semloc {

// Oriented 3D bounding box. dims = (W, H, L): width along the local x axis,
// height along local z, length along local y.
struct OrientedBox3 {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d dims = Eigen::Vector3d::Ones();  // (W, H, L)
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

  OrientedBox3() = default;
  OrientedBox3(const Eigen::Vector3d& c, const Eigen::Vector3d& d,
               const Eigen::Matrix3d& r)
      : center(c), dims(d), rotation(r) {}

  double width() const { return dims.x(); }
  double height() const { return dims.y(); }
  double length() const { return dims.z(); }

  double volume() const { return dims.prod(); }

  // Half extents in the local frame ordered (x, y, z) = (W/2, L/2, H/2).
  Eigen::Vector3d half_extents_local() const {
    return {0.5 * dims.x(), 0.5 * dims.z(), 0.5 * dims.y()};
  }

  std::array<Eigen::Vector3d, 8> corners() const;

  bool valid(double rot_tol = 1e-6) const;
};

// Ground-plane rectangle of a box: center, (half-width, half-length), yaw.
struct Footprint2 {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  Eigen::Vector2d extents = Eigen::Vector2d::Ones();
  double yaw = 0.0;

  double area() const { return 4.0 * extents.x() * extents.y(); }

  // Corner polygon, counter-clockwise.
  std::array<Eigen::Vector2d, 4> corners() const;
};

// Yaw of the box's ground-plane axes. Projects the local x axis onto the
// ground; falls back to the local y axis when x points near-vertical.
double box_yaw(const Eigen::Matrix3d& rotation);

// Projects a box onto the ground plane.
Footprint2 footprint(const OrientedBox3& box);

// Vertical interval [z_min, z_max] used by the yaw-decomposed 3D IoU.
std::array<double, 2> vertical_interval(const OrientedBox3& box);

}  // namespace semloc

#endif  // SEMLOC_ORIENTED_BOX_HPP_
