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

#ifndef SEMLOC_STREAMS_HPP_
#define SEMLOC_STREAMS_HPP_

#include <string>
#include <vector>

#include "semloc/detections.hpp"
#include "semloc/pose.hpp"
#include "semloc/sensor_model.hpp"

namespace semloc {

// One mapping-stream frame: posed camera-frame detections.
struct DetectionFrame {
  int frame_id = 0;
  double timestamp_s = 0.0;
  Pose2 robot_pose;
  Pose3 cam_pose;  // world -> camera
  std::vector<Detection3D> detections;
};

// One localization-stream event: either an odometry delta or an observation.
struct SequenceEvent {
  enum class Type { kOdom, kObs };
  Type type = Type::kOdom;
  double timestamp_s = 0.0;
  Pose2 odom_delta;     // kOdom: relative motion in the previous robot frame
  Observation observation;  // kObs
};

struct TimedPose {
  double timestamp_s = 0.0;
  Pose2 pose;
};

// One localizer output line.
struct EstimateRecord {
  double timestamp_s = 0.0;
  Pose2 estimate;
  double n_eff = 0.0;
  bool converged = false;
};

// Posed-frame index entry for the annotator.
struct PosedFrame {
  int frame_id = 0;
  double timestamp_s = 0.0;
  Pose3 cam_pose;
};

// 2D detection tagged with its frame.
struct Detection2DRecord {
  int frame_id = 0;
  Detection2D detection;
};

// Annotator output: one frame of labels.
struct LabelFrame {
  int frame_id = 0;
  Pose3 cam_pose;
  std::vector<FrameLabel> labels;
};

// World-frame prediction for noise-model fitting.
struct PredictionRecord {
  int frame_id = 0;
  Detection3D detection;  // box in world frame
};

}  // namespace semloc

#endif  // SEMLOC_STREAMS_HPP_
