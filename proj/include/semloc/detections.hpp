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

#ifndef SEMLOC_DETECTIONS_HPP_
#define SEMLOC_DETECTIONS_HPP_

#include <string>
#include <vector>

#include "semloc/camera.hpp"
#include "semloc/oriented_box.hpp"

namespace semloc {

// One output of the 3D object detector: class, confidence, box. Detector
// streams carry the box in the camera frame; pipeline stages that transform
// it (mapping, noise fitting) state their frame at the call site.
struct Detection3D {
  std::string class_label;
  double confidence = 1.0;
  OrientedBox3 box;
};

// One output of the 2D image-space detector.
struct Detection2D {
  std::string class_label;
  BBox2 bbox;
  double confidence = 1.0;
};

// A manually annotated object of the environment model, world frame.
struct GroundTruthObject {
  int id = 0;
  std::string class_label;
  OrientedBox3 box;
};

// One generated training label: camera-frame box plus image-space quantities.
struct FrameLabel {
  int gt_id = 0;
  std::string class_label;
  OrientedBox3 box_camera;
  BBox2 bbox2d;
  double truncation = 0.0;  // fraction of the object outside the frustum
  double visibility = 0.0;  // 2D-detector agreement proxy
};

}  // namespace semloc

#endif  // SEMLOC_DETECTIONS_HPP_
