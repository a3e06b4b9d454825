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

#ifndef SEMLOC_SENSOR_MODEL_HPP_
#define SEMLOC_SENSOR_MODEL_HPP_

#include <map>
#include <string>
#include <vector>

#include "semloc/detections.hpp"
#include "semloc/edt.hpp"
#include "semloc/floor_plan.hpp"
#include "semloc/noise_model.hpp"
#include "semloc/object_map.hpp"
#include "semloc/probability_map.hpp"

namespace semloc {

enum class SensorModelKind { kObject, kEdt, kD, kO };

SensorModelKind sensor_model_from_string(const std::string& name);
std::string to_string(SensorModelKind kind);

// One observation fed to the filter: camera-frame detections plus the
// robot->camera extrinsics.
struct Observation {
  double timestamp_s = 0.0;
  std::vector<Detection3D> detections;
  Pose3 cam_pose_in_robot;
};

// Per-class Euclidean distance transforms over rasterized map footprints.
struct ClassEdt {
  std::map<std::string, DistanceField> fields;
  FloorPlanMeta meta;
};

ClassEdt build_class_edt(const ObjectMap& map, const FloorPlan& plan);

// Immutable per-class view of the maps, precomputed for fast particle
// weighting: each entry pairs an object's Gaussian with its footprint.
class SensorMap {
 public:
  struct Entry {
    ObjectGaussian gaussian;
    Footprint2 footprint;
  };

  SensorMap() = default;
  SensorMap(const ObjectMap& object_map, const ObjectProbabilityMap& prob_map);

  const std::vector<Entry>* entries_of(const std::string& cls) const;

  // Footprints of all map objects of a class (independent of m_p coverage).
  const std::vector<Footprint2>* footprints_of(const std::string& cls) const;

  // sqrt(max eigenvalue) of the class covariance, for the EDT baseline.
  double class_sigma(const std::string& cls, double fallback) const;

 private:
  std::map<std::string, std::vector<Entry>> by_class_;
  std::map<std::string, std::vector<Footprint2>> footprints_by_class_;
  std::map<std::string, double> sigma_by_class_;
};

// A detection re-expressed in the robot frame, precomputed once per
// observation and shared by all particles.
struct RobotFrameDetection {
  std::string class_label;
  double confidence = 1.0;
  Footprint2 footprint;  // in the robot frame
};

std::vector<RobotFrameDetection> detections_in_robot_frame(
    const Observation& obs);

Footprint2 footprint_to_world(const Footprint2& fp_robot, const Pose2& pose);

// Object sensor model: combines the center likelihood against the object
// probability map with the footprint shape similarity of the best object,
// blended with the false-association weight eta.
double weigh_object(const RobotFrameDetection& det, const Pose2& particle_pose,
                    const SensorMap& maps, double eta);

// Beam-end-point style baseline on per-class distance transforms.
double weigh_object_edt(const RobotFrameDetection& det,
                        const Pose2& particle_pose, const ClassEdt& edt,
                        const SensorMap& maps, double eta);

// Center-likelihood-only baseline.
double weigh_object_d(const RobotFrameDetection& det,
                      const Pose2& particle_pose, const SensorMap& maps);

// Footprint-overlap-only baseline.
double weigh_object_o(const RobotFrameDetection& det,
                      const Pose2& particle_pose, const SensorMap& maps);

// Geometric mean of per-detection weights; 1.0 for an empty frame.
double weigh_frame(const std::vector<RobotFrameDetection>& detections,
                   const Pose2& particle_pose, SensorModelKind kind,
                   const SensorMap& maps, const ClassEdt* edt, double eta);

}  // namespace semloc

#endif  // SEMLOC_SENSOR_MODEL_HPP_
