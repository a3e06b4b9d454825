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

#include "semloc/sensor_model.hpp"

#include <cmath>
#include <stdexcept>

#include "semloc/polygon.hpp"

namespace semloc {

namespace {
constexpr double kDZeroFloor = 1e-6;
}

SensorModelKind sensor_model_from_string(const std::string& name) {
  if (name == "object") return SensorModelKind::kObject;
  if (name == "edt") return SensorModelKind::kEdt;
  if (name == "d") return SensorModelKind::kD;
  if (name == "o") return SensorModelKind::kO;
  throw std::invalid_argument("unknown sensor model: " + name);
}

std::string to_string(SensorModelKind kind) {
  switch (kind) {
    case SensorModelKind::kObject: return "object";
    case SensorModelKind::kEdt: return "edt";
    case SensorModelKind::kD: return "d";
    case SensorModelKind::kO: return "o";
  }
  return "object";
}

ClassEdt build_class_edt(const ObjectMap& map, const FloorPlan& plan) {
  ClassEdt edt;
  edt.meta = plan.meta();
  const int rows = plan.rows();
  const int cols = plan.cols();

  for (const std::string& cls : map.class_dictionary()) {
    std::vector<std::uint8_t> feature(static_cast<std::size_t>(rows) * cols, 0);
    for (const MapObject& obj : map.objects) {
      if (obj.class_label != cls) continue;
      const Footprint2 fp = footprint(obj.box);
      const ConvexPolygon poly = to_polygon(fp);
      // Rasterize: mark cells whose center lies inside the footprint.
      Eigen::Vector2d lo = poly.pts[0];
      Eigen::Vector2d hi = poly.pts[0];
      for (std::size_t i = 1; i < poly.size; ++i) {
        lo = lo.cwiseMin(poly.pts[i]);
        hi = hi.cwiseMax(poly.pts[i]);
      }
      const Eigen::Vector2i cell_lo = plan.world_to_cell(lo);
      const Eigen::Vector2i cell_hi = plan.world_to_cell(hi);
      for (int r = cell_lo.x(); r <= cell_hi.x(); ++r) {
        for (int c = cell_lo.y(); c <= cell_hi.y(); ++c) {
          if (!plan.in_bounds(r, c)) continue;
          const Eigen::Vector2d center = plan.cell_center(r, c);
          // Point-in-convex-polygon: inside iff left of every CCW edge.
          bool inside = true;
          for (std::size_t e = 0; e < poly.size && inside; ++e) {
            const Eigen::Vector2d& a = poly.pts[e];
            const Eigen::Vector2d& b = poly.pts[(e + 1) % poly.size];
            const double side = (b.x() - a.x()) * (center.y() - a.y()) -
                                (b.y() - a.y()) * (center.x() - a.x());
            inside = side >= 0.0;
          }
          if (inside) feature[r * cols + c] = 1;
        }
      }
      // Always mark the center cell so thin objects are never lost.
      const Eigen::Vector2i cc = plan.world_to_cell(fp.center);
      if (plan.in_bounds(cc.x(), cc.y())) feature[cc.x() * cols + cc.y()] = 1;
    }
    edt.fields[cls] =
        euclidean_distance_transform(feature, rows, cols, plan.resolution());
  }
  return edt;
}

SensorMap::SensorMap(const ObjectMap& object_map,
                     const ObjectProbabilityMap& prob_map) {
  for (const ObjectGaussian& g : prob_map.gaussians) {
    const MapObject* obj = object_map.find(g.object_id);
    if (obj == nullptr) continue;
    by_class_[g.class_label].push_back({g, footprint(obj->box)});
  }
  for (const MapObject& obj : object_map.objects) {
    footprints_by_class_[obj.class_label].push_back(footprint(obj.box));
  }
  // Class sigma from the class-model covariance; every instantiated Gaussian
  // shares the eigenvalues of its class model, so any instance works.
  for (const auto& [cls, entries] : by_class_) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(
        entries.front().gaussian.covariance);
    sigma_by_class_[cls] = std::sqrt(solver.eigenvalues().maxCoeff());
  }
}

const std::vector<SensorMap::Entry>* SensorMap::entries_of(
    const std::string& cls) const {
  const auto it = by_class_.find(cls);
  return it == by_class_.end() ? nullptr : &it->second;
}

const std::vector<Footprint2>* SensorMap::footprints_of(
    const std::string& cls) const {
  const auto it = footprints_by_class_.find(cls);
  return it == footprints_by_class_.end() ? nullptr : &it->second;
}

double SensorMap::class_sigma(const std::string& cls, double fallback) const {
  const auto it = sigma_by_class_.find(cls);
  return it == sigma_by_class_.end() ? fallback : it->second;
}

std::vector<RobotFrameDetection> detections_in_robot_frame(
    const Observation& obs) {
  const Pose3 cam_to_robot = obs.cam_pose_in_robot.inverse();
  std::vector<RobotFrameDetection> out;
  out.reserve(obs.detections.size());
  for (const Detection3D& det : obs.detections) {
    OrientedBox3 box_robot = det.box;
    box_robot.center = cam_to_robot.apply(det.box.center);
    box_robot.rotation = cam_to_robot.rotation * det.box.rotation;
    out.push_back({det.class_label, det.confidence, footprint(box_robot)});
  }
  return out;
}

Footprint2 footprint_to_world(const Footprint2& fp_robot, const Pose2& pose) {
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  Footprint2 fp = fp_robot;
  fp.center = {pose.x + c * fp_robot.center.x() - s * fp_robot.center.y(),
               pose.y + s * fp_robot.center.x() + c * fp_robot.center.y()};
  fp.yaw = normalize_angle(fp_robot.yaw + pose.theta);
  return fp;
}

double weigh_object(const RobotFrameDetection& det, const Pose2& particle_pose,
                    const SensorMap& maps, double eta) {
  const auto* entries = maps.entries_of(det.class_label);
  if (entries == nullptr || entries->empty()) return eta;

  const Footprint2 fp_world = footprint_to_world(det.footprint, particle_pose);

  double p_o = 0.0;
  const SensorMap::Entry* best = nullptr;
  for (const SensorMap::Entry& entry : *entries) {
    const double p = entry.gaussian.normalized_density(fp_world.center);
    if (p > p_o || best == nullptr) {
      p_o = p;
      best = &entry;
    }
  }

  const double iou = iou_footprint(fp_world, best->footprint);
  const double p_g = std::exp(-(1.0 - iou));
  return p_o * p_g + (1.0 - p_o) * eta;
}

double weigh_object_edt(const RobotFrameDetection& det,
                        const Pose2& particle_pose, const ClassEdt& edt,
                        const SensorMap& maps, double eta) {
  const auto it = edt.fields.find(det.class_label);
  if (it == edt.fields.end()) return eta;
  const DistanceField& field = it->second;

  const Footprint2 fp_world = footprint_to_world(det.footprint, particle_pose);
  int row = static_cast<int>(
      std::floor((fp_world.center.y() - edt.meta.origin.y) / field.resolution));
  int col = static_cast<int>(
      std::floor((fp_world.center.x() - edt.meta.origin.x) / field.resolution));
  row = std::clamp(row, 0, field.rows - 1);
  col = std::clamp(col, 0, field.cols - 1);
  const double d = field.at(row, col);
  if (!std::isfinite(d)) return eta;

  const double sigma = maps.class_sigma(det.class_label, 0.2);
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

double weigh_object_d(const RobotFrameDetection& det,
                      const Pose2& particle_pose, const SensorMap& maps) {
  const auto* entries = maps.entries_of(det.class_label);
  if (entries == nullptr || entries->empty()) return kDZeroFloor;

  const Footprint2 fp_world = footprint_to_world(det.footprint, particle_pose);
  double p_o = 0.0;
  for (const SensorMap::Entry& entry : *entries) {
    p_o = std::max(p_o, entry.gaussian.normalized_density(fp_world.center));
  }
  return std::max(p_o, kDZeroFloor);
}

double weigh_object_o(const RobotFrameDetection& det,
                      const Pose2& particle_pose, const SensorMap& maps) {
  const auto* footprints = maps.footprints_of(det.class_label);
  const Footprint2 fp_world = footprint_to_world(det.footprint, particle_pose);
  double best_iou = 0.0;
  if (footprints != nullptr) {
    for (const Footprint2& fp : *footprints) {
      best_iou = std::max(best_iou, iou_footprint(fp_world, fp));
    }
  }
  return std::exp(-(1.0 - best_iou));
}

double weigh_frame(const std::vector<RobotFrameDetection>& detections,
                   const Pose2& particle_pose, SensorModelKind kind,
                   const SensorMap& maps, const ClassEdt* edt, double eta) {
  if (detections.empty()) return 1.0;

  double log_sum = 0.0;
  for (const RobotFrameDetection& det : detections) {
    double w = 1.0;
    switch (kind) {
      case SensorModelKind::kObject:
        w = weigh_object(det, particle_pose, maps, eta);
        break;
      case SensorModelKind::kEdt:
        w = weigh_object_edt(det, particle_pose, *edt, maps, eta);
        break;
      case SensorModelKind::kD:
        w = weigh_object_d(det, particle_pose, maps);
        break;
      case SensorModelKind::kO:
        w = weigh_object_o(det, particle_pose, maps);
        break;
    }
    log_sum += std::log(std::max(w, 1e-300));
  }
  return std::exp(log_sum / static_cast<double>(detections.size()));
}

}  // namespace semloc
