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

#include "semloc/camera.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace semloc {

namespace {
constexpr double kMinDepth = 1e-9;
}

double iou_bbox2(const BBox2& a, const BBox2& b) {
  const double ix = std::min(a.max.x(), b.max.x()) - std::max(a.min.x(), b.min.x());
  const double iy = std::min(a.max.y(), b.max.y()) - std::max(a.min.y(), b.min.y());
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

CameraModel CameraModel::simple(double fx, double fy, double cx, double cy,
                                int w, int h) {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return {k, w, h};
}

bool CameraModel::valid() const {
  return intrinsics(0, 0) > 0.0 && intrinsics(1, 1) > 0.0 &&
         intrinsics(1, 0) == 0.0 && intrinsics(2, 0) == 0.0 &&
         intrinsics(2, 1) == 0.0 && intrinsics(2, 2) == 1.0 &&
         image_width > 0 && image_height > 0;
}

std::optional<Eigen::Vector2d> project_point(const Eigen::Vector3d& p_world,
                                             const Pose3& cam_pose,
                                             const CameraModel& cam) {
  const Eigen::Vector3d p_cam = cam_pose.apply(p_world);
  if (p_cam.z() <= kMinDepth) return std::nullopt;
  const Eigen::Vector3d uvw = cam.intrinsics * p_cam;
  return Eigen::Vector2d(uvw.x() / uvw.z(), uvw.y() / uvw.z());
}

Eigen::Vector3d camera_position_in_world(const Pose3& cam_pose) {
  return -(cam_pose.rotation.transpose() * cam_pose.translation);
}

namespace {

// Surface sample points of a box in the local frame: 8 corners plus an
// n x n grid on each face. n = 2 gives the 32-point pattern.
std::vector<Eigen::Vector3d> surface_samples_local(const OrientedBox3& box,
                                                   int n) {
  const Eigen::Vector3d h = box.half_extents_local();
  std::vector<Eigen::Vector3d> samples;
  samples.reserve(8 + 6 * n * n);
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1})
        samples.emplace_back(sx * h.x(), sy * h.y(), sz * h.z());

  // Face grid at interior parameters, avoiding the corners already present.
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (int side : {-1, 1}) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double fu = (2.0 * (i + 0.5) / n - 1.0);
          const double fv = (2.0 * (j + 0.5) / n - 1.0);
          Eigen::Vector3d p;
          p[axis] = side * h[axis];
          p[u] = fu * h[u];
          p[v] = fv * h[v];
          samples.push_back(p);
        }
      }
    }
  }
  return samples;
}

}  // namespace

BoxProjection project_box_to_image(const OrientedBox3& box,
                                   const Pose3& cam_pose,
                                   const CameraModel& cam,
                                   int samples_per_face_side) {
  BoxProjection result;

  bool any_in_front = false;
  Eigen::Vector2d lo(std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::max());
  Eigen::Vector2d hi(std::numeric_limits<double>::lowest(),
                     std::numeric_limits<double>::lowest());
  for (const Eigen::Vector3d& corner : box.corners()) {
    const auto px = project_point(corner, cam_pose, cam);
    if (!px) continue;
    any_in_front = true;
    lo = lo.cwiseMin(*px);
    hi = hi.cwiseMax(*px);
  }

  const auto samples = surface_samples_local(box, samples_per_face_side);
  int inside = 0;
  for (const Eigen::Vector3d& local : samples) {
    const Eigen::Vector3d world = box.center + box.rotation * local;
    const auto px = project_point(world, cam_pose, cam);
    if (!px) continue;
    if (px->x() >= 0.0 && px->x() <= cam.image_width && px->y() >= 0.0 &&
        px->y() <= cam.image_height) {
      ++inside;
    }
  }
  result.in_frustum_fraction =
      static_cast<double>(inside) / static_cast<double>(samples.size());

  if (!any_in_front) {
    result.in_frustum_fraction = 0.0;
    return result;  // fully behind
  }

  BBox2 bbox;
  bbox.min = {std::clamp(lo.x(), 0.0, static_cast<double>(cam.image_width)),
              std::clamp(lo.y(), 0.0, static_cast<double>(cam.image_height))};
  bbox.max = {std::clamp(hi.x(), 0.0, static_cast<double>(cam.image_width)),
              std::clamp(hi.y(), 0.0, static_cast<double>(cam.image_height))};
  result.bbox = bbox;
  return result;
}

}  // namespace semloc
