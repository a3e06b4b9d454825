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

#include "semloc/oriented_box.hpp"

#include <cmath>

namespace semloc {

std::array<Eigen::Vector3d, 8> OrientedBox3::corners() const {
  const Eigen::Vector3d h = half_extents_local();
  std::array<Eigen::Vector3d, 8> out;
  int k = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        const Eigen::Vector3d local(sx * h.x(), sy * h.y(), sz * h.z());
        out[k++] = center + rotation * local;
      }
    }
  }
  return out;
}

bool OrientedBox3::valid(double rot_tol) const {
  if (!(dims.array() > 0.0).all()) return false;
  const Eigen::Matrix3d e =
      rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
  if (e.cwiseAbs().maxCoeff() >= rot_tol) return false;
  return std::abs(rotation.determinant() - 1.0) < rot_tol;
}

std::array<Eigen::Vector2d, 4> Footprint2::corners() const {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const double hx = extents.x();
  const double hy = extents.y();
  // CCW order for positive extents.
  const std::array<Eigen::Vector2d, 4> local = {
      Eigen::Vector2d(hx, hy), Eigen::Vector2d(-hx, hy),
      Eigen::Vector2d(-hx, -hy), Eigen::Vector2d(hx, -hy)};
  std::array<Eigen::Vector2d, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = {center.x() + c * local[i].x() - s * local[i].y(),
              center.y() + s * local[i].x() + c * local[i].y()};
  }
  return out;
}

double box_yaw(const Eigen::Matrix3d& rotation) {
  const Eigen::Vector3d x_axis = rotation.col(0);
  if (std::hypot(x_axis.x(), x_axis.y()) >= 1e-6) {
    return std::atan2(x_axis.y(), x_axis.x());
  }
  // Local x points near-vertical: recover yaw from the local y axis, which
  // sits at +90 degrees from x in the ground plane.
  const Eigen::Vector3d y_axis = rotation.col(1);
  return normalize_angle(std::atan2(y_axis.y(), y_axis.x()) - 0.5 * kPi);
}

Footprint2 footprint(const OrientedBox3& box) {
  Footprint2 fp;
  fp.center = box.center.head<2>();
  fp.extents = {0.5 * box.dims.x(), 0.5 * box.dims.z()};
  fp.yaw = box_yaw(box.rotation);
  return fp;
}

std::array<double, 2> vertical_interval(const OrientedBox3& box) {
  const double hz = 0.5 * box.dims.y();
  return {box.center.z() - hz, box.center.z() + hz};
}

}  // namespace semloc
