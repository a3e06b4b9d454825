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

#ifndef SEMLOC_ANNOTATOR_HPP_
#define SEMLOC_ANNOTATOR_HPP_

#include <vector>

#include "semloc/detections.hpp"
#include "semloc/floor_plan.hpp"

namespace semloc {

struct AnnotatorConfig {
  // Minimum projected-vs-detected 2D IoU for a detector match.
  double tau_2d = 0.25;
};

// Expresses a world-frame box in the camera frame (cam_pose: world->camera).
OrientedBox3 box_world_to_camera(const OrientedBox3& box, const Pose3& cam_pose);

// Generates 3D training labels for one posed frame.
//
// A ground-truth object produces a label iff it is partially in the frustum,
// the ray from the camera to its center is wall-free, and a same-class 2D
// detection overlaps its projection with IoU >= tau_2d (greedy per class by
// descending IoU). Truncation is the fraction of the object outside the
// frustum; visibility is the matched 2D IoU.
std::vector<FrameLabel> annotate_frame(
    const std::vector<GroundTruthObject>& gt_objects, const Pose3& cam_pose,
    const CameraModel& cam, const std::vector<Detection2D>& detections_2d,
    const FloorPlan& plan, const AnnotatorConfig& config = {});

}  // namespace semloc

#endif  // SEMLOC_ANNOTATOR_HPP_
