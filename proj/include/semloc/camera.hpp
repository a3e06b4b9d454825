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

#ifndef SEMLOC_CAMERA_HPP_
#define SEMLOC_CAMERA_HPP_

#include <optional>

#include <Eigen/Dense>

#include "semloc/oriented_box.hpp"
#include "semloc/pose.hpp"

namespace semloc {

// Axis-aligned 2D box in pixel coordinates.
struct BBox2 {
  Eigen::Vector2d min = Eigen::Vector2d::Zero();
  Eigen::Vector2d max = Eigen::Vector2d::Zero();

  double width() const { return max.x() - min.x(); }
  double height() const { return max.y() - min.y(); }
  double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }
};

double iou_bbox2(const BBox2& a, const BBox2& b);

// Pinhole camera: intrinsics K and image size.
struct CameraModel {
  Eigen::Matrix3d intrinsics = Eigen::Matrix3d::Identity();
  int image_width = 0;
  int image_height = 0;

  CameraModel() = default;
  CameraModel(const Eigen::Matrix3d& k, int w, int h)
      : intrinsics(k), image_width(w), image_height(h) {}

  static CameraModel simple(double fx, double fy, double cx, double cy, int w,
                            int h);

  bool valid() const;
};

// Perspective projection of a world point; nullopt when the camera-frame
// depth is <= 1e-9 (behind or on the image plane).
std::optional<Eigen::Vector2d> project_point(const Eigen::Vector3d& p_world,
                                             const Pose3& cam_pose,
                                             const CameraModel& cam);

struct BoxProjection {
  // Axis-aligned hull of the projected corners, clipped to image bounds.
  // Absent when every corner lies behind the camera.
  std::optional<BBox2> bbox;
  // Fraction of box surface samples that project inside the image with
  // positive depth.
  double in_frustum_fraction = 0.0;
};

// Projects a 3D box into the image. Samples the box surface with the 8
// corners plus a 2x2 grid per face (32 points) for the frustum fraction;
// `samples_per_face_side` > 2 densifies the grid (used by oracle tests).
BoxProjection project_box_to_image(const OrientedBox3& box,
                                   const Pose3& cam_pose,
                                   const CameraModel& cam,
                                   int samples_per_face_side = 2);

// Camera origin expressed in world coordinates (cam_pose stores
// world->camera, so this is -R^T t).
Eigen::Vector3d camera_position_in_world(const Pose3& cam_pose);

}  // namespace semloc

#endif  // SEMLOC_CAMERA_HPP_
