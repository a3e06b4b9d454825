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

#include "semloc/annotator.hpp"

#include <algorithm>

namespace semloc {

OrientedBox3 box_world_to_camera(const OrientedBox3& box,
                                 const Pose3& cam_pose) {
  OrientedBox3 out = box;
  out.center = cam_pose.apply(box.center);
  out.rotation = cam_pose.rotation * box.rotation;
  return out;
}

std::vector<FrameLabel> annotate_frame(
    const std::vector<GroundTruthObject>& gt_objects, const Pose3& cam_pose,
    const CameraModel& cam, const std::vector<Detection2D>& detections_2d,
    const FloorPlan& plan, const AnnotatorConfig& config) {
  struct Candidate {
    const GroundTruthObject* gt = nullptr;
    BBox2 projected;
    double in_frustum_fraction = 0.0;
  };

  const Eigen::Vector3d cam_center = camera_position_in_world(cam_pose);
  const Eigen::Vector2d cam_ground = cam_center.head<2>();

  std::vector<Candidate> candidates;
  for (const GroundTruthObject& gt : gt_objects) {
    const BoxProjection proj = project_box_to_image(gt.box, cam_pose, cam);
    if (proj.in_frustum_fraction <= 0.0 || !proj.bbox) continue;
    const Eigen::Vector2d target = gt.box.center.head<2>();
    if (!plan.contains_world(cam_ground) || !plan.contains_world(target)) {
      continue;
    }
    if (raycast(plan, cam_ground, target).blocked) continue;
    candidates.push_back({&gt, *proj.bbox, proj.in_frustum_fraction});
  }

  // Greedy per-class matching by descending 2D IoU.
  struct Pair {
    double iou;
    std::size_t candidate;
    std::size_t detection;
  };
  std::vector<Pair> pairs;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    for (std::size_t di = 0; di < detections_2d.size(); ++di) {
      if (candidates[ci].gt->class_label != detections_2d[di].class_label) {
        continue;
      }
      const double iou =
          iou_bbox2(candidates[ci].projected, detections_2d[di].bbox);
      if (iou >= config.tau_2d) pairs.push_back({iou, ci, di});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.iou > b.iou; });

  std::vector<bool> candidate_used(candidates.size(), false);
  std::vector<bool> detection_used(detections_2d.size(), false);
  std::vector<FrameLabel> labels;
  for (const Pair& p : pairs) {
    if (candidate_used[p.candidate] || detection_used[p.detection]) continue;
    candidate_used[p.candidate] = true;
    detection_used[p.detection] = true;

    const Candidate& cand = candidates[p.candidate];
    FrameLabel label;
    label.gt_id = cand.gt->id;
    label.class_label = cand.gt->class_label;
    label.box_camera = box_world_to_camera(cand.gt->box, cam_pose);
    label.bbox2d = cand.projected;
    label.truncation = 1.0 - cand.in_frustum_fraction;
    label.visibility = p.iou;
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace semloc
