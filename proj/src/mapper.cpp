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

#include "semloc/mapper.hpp"

#include <array>
#include <cmath>

#include "semloc/hungarian.hpp"
#include "semloc/io/log.hpp"
#include "semloc/polygon.hpp"
#include "semloc/rotation_average.hpp"

namespace semloc {

namespace {

constexpr double kForbiddenCost = 1e6;

OrientedBox3 transform_box(const OrientedBox3& box, const Pose3& transform) {
  OrientedBox3 out = box;
  out.center = transform.apply(box.center);
  out.rotation = transform.rotation * box.rotation;
  return out;
}

}  // namespace

void update_active(ObjectMap& map, const Pose3& cam_pose,
                   const CameraModel& cam, const FloorPlan& plan) {
  const Eigen::Vector2d cam_ground =
      camera_position_in_world(cam_pose).head<2>();
  const bool cam_in_plan = plan.contains_world(cam_ground);
  for (MapObject& obj : map.objects) {
    const BoxProjection proj = project_box_to_image(obj.box, cam_pose, cam);
    bool active = proj.in_frustum_fraction > 0.0;
    if (active && cam_in_plan) {
      const Eigen::Vector2d target = footprint(obj.box).center;
      if (plan.contains_world(target)) {
        active = !raycast(plan, cam_ground, target).blocked;
      }
    }
    obj.active = active;
  }
}

std::optional<double> association_cost(
    const MapObject& target, const MapObject& candidate,
    const std::map<std::string, ClassNoiseModel>& models) {
  if (target.class_label != candidate.class_label) return std::nullopt;
  const double cost_iou = 1.0 - iou_box3(target.box, candidate.box);
  const auto it = models.find(target.class_label);
  if (it == models.end()) {
    return cost_iou;
  }
  const ObjectGaussian g = instantiate(it->second, target);
  const double cost_center =
      1.0 - g.normalized_density(candidate.box.center.head<2>());
  return 0.5 * (cost_iou + cost_center);
}

AssociationResult associate(const std::vector<MapObject>& targets,
                            const std::vector<MapObject>& candidates,
                            const std::map<std::string, ClassNoiseModel>& models,
                            double tau_cost) {
  AssociationResult result;
  if (targets.empty() || candidates.empty()) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      result.unmatched_targets.push_back(i);
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      result.unmatched_candidates.push_back(j);
      result.unmatched_candidate_min_cost.push_back(kForbiddenCost);
    }
    return result;
  }

  Eigen::MatrixXd cost(targets.size(), candidates.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const auto c = association_cost(targets[i], candidates[j], models);
      cost(i, j) = c.value_or(kForbiddenCost);
    }
  }

  const std::vector<int> row_to_col = solve_assignment(cost);
  std::vector<bool> candidate_matched(candidates.size(), false);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const int j = row_to_col[i];
    if (j >= 0 && cost(i, j) < tau_cost) {
      result.pairs.emplace_back(i, static_cast<std::size_t>(j));
      candidate_matched[j] = true;
    } else {
      result.unmatched_targets.push_back(i);
    }
  }
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!candidate_matched[j]) {
      result.unmatched_candidates.push_back(j);
      result.unmatched_candidate_min_cost.push_back(
          cost.col(static_cast<int>(j)).minCoeff());
    }
  }
  return result;
}

void merge_objects(MapObject& target, const MapObject& pred) {
  const double wt = target.n_match;
  const double wp = pred.n_match;
  const double total = wt + wp;
  target.box.center = (wt * target.box.center + wp * pred.box.center) / total;
  target.box.dims = (wt * target.box.dims + wp * pred.box.dims) / total;

  const std::array<Eigen::Matrix3d, 2> rotations = {target.box.rotation,
                                                    pred.box.rotation};
  const std::array<double, 2> weights = {wt, wp};
  if (const auto averaged = rotation_average(rotations, weights)) {
    target.box.rotation = *averaged;
  }
  // Degenerate mean: keep the target rotation.

  target.n_match += pred.n_match;
  target.n_skip += pred.n_skip;
}

void purge(ObjectMap& map, const MapperConfig& config) {
  std::erase_if(map.objects, [&config](const MapObject& obj) {
    return obj.n_skip > 0 &&
           static_cast<double>(obj.n_match) / obj.n_skip < config.tau_purge;
  });
}

Mapper::Mapper(FloorPlan plan, RoomMap rooms,
               std::map<std::string, ClassNoiseModel> models, CameraModel cam,
               MapperConfig config)
    : plan_(std::move(plan)),
      rooms_(std::move(rooms)),
      models_(std::move(models)),
      cam_(std::move(cam)),
      config_(config) {}

void Mapper::ingest_frame(const std::vector<Detection3D>& detections,
                          const Pose2& robot_pose, const Pose3& cam_pose) {
  last_cam_pose_ = cam_pose;
  has_frame_ = true;
  if (!local_.has_anchor) {
    local_.anchor_pose = robot_pose;
    local_.has_anchor = true;
  }

  // Per-frame visibility bookkeeping on the global map, consumed by the
  // skip accounting at integration time.
  update_active(global_, cam_pose, cam_, plan_);
  for (const MapObject& obj : global_.objects) {
    if (obj.active) ++window_active_frames_[obj.id];
  }

  // Detections become world-frame candidate objects with unit weight.
  const Pose3 cam_to_world = cam_pose.inverse();
  std::vector<MapObject> observed;
  observed.reserve(detections.size());
  for (const Detection3D& det : detections) {
    MapObject obj;
    obj.class_label = det.class_label;
    obj.box = transform_box(det.box, cam_to_world);
    obj.n_match = 1;
    obj.n_skip = 0;
    observed.push_back(std::move(obj));
  }

  update_active(local_.objects, cam_pose, cam_, plan_);

  std::vector<std::size_t> active_indices;
  std::vector<MapObject> active_objects;
  for (std::size_t i = 0; i < local_.objects.objects.size(); ++i) {
    if (local_.objects.objects[i].active) {
      active_indices.push_back(i);
      active_objects.push_back(local_.objects.objects[i]);
    }
  }

  const AssociationResult assoc =
      associate(active_objects, observed, models_, config_.tau_cost);
  for (const auto& [ti, cj] : assoc.pairs) {
    merge_objects(local_.objects.objects[active_indices[ti]], observed[cj]);
  }
  for (const std::size_t ti : assoc.unmatched_targets) {
    local_.objects.objects[active_indices[ti]].n_skip += 1;
  }
  for (std::size_t k = 0; k < assoc.unmatched_candidates.size(); ++k) {
    // A detection displaced by the one-to-one assignment but explained by
    // an existing object is redundant; spawning it would plant a duplicate.
    if (assoc.unmatched_candidate_min_cost[k] < config_.tau_cost) continue;
    const std::size_t cj = assoc.unmatched_candidates[k];
    MapObject& added = local_.objects.add(observed[cj].class_label,
                                          observed[cj].box);
    added.n_match = 1;
  }

  const Pose2 delta = local_.anchor_pose.relative_to(robot_pose);
  if (delta.translation().norm() > config_.d_xy ||
      std::abs(delta.theta) > config_.d_theta) {
    integrate(robot_pose);
  }
}

void Mapper::integrate(const Pose2& robot_pose) {
  if (!has_frame_) {
    local_.anchor_pose = robot_pose;
    local_.has_anchor = true;
    return;
  }

  const int current_room = rooms_.label_at(plan_, {robot_pose.x, robot_pose.y});

  // Merge candidates are the global objects of the room we are in.
  std::vector<std::size_t> candidate_indices;
  std::vector<MapObject> candidates;
  for (std::size_t i = 0; i < global_.objects.size(); ++i) {
    if (global_.objects[i].room_id == current_room) {
      candidate_indices.push_back(i);
      candidates.push_back(global_.objects[i]);
    }
  }

  const AssociationResult assoc = associate(
      candidates, local_.objects.objects, models_, config_.tau_cost);
  for (const auto& [ti, cj] : assoc.pairs) {
    merge_objects(global_.objects[candidate_indices[ti]],
                  local_.objects.objects[cj]);
  }
  for (const std::size_t ti : assoc.unmatched_targets) {
    MapObject& obj = global_.objects[candidate_indices[ti]];
    const auto it = window_active_frames_.find(obj.id);
    if (it != window_active_frames_.end()) obj.n_skip += it->second;
  }
  for (std::size_t k = 0; k < assoc.unmatched_candidates.size(); ++k) {
    if (assoc.unmatched_candidate_min_cost[k] < config_.tau_cost) continue;
    const std::size_t cj = assoc.unmatched_candidates[k];
    const MapObject& local_obj = local_.objects.objects[cj];
    if (log_level() >= LogLevel::kDebug) {
      double best_any = 1e9;
      for (const MapObject& g : global_.objects) {
        const auto c = association_cost(g, local_obj, models_);
        if (c) best_any = std::min(best_any, *c);
      }
      log_debug("integrate add " + local_obj.class_label + " at (" +
                std::to_string(local_obj.box.center.x()) + "," +
                std::to_string(local_obj.box.center.y()) + ") room_cands=" +
                std::to_string(candidates.size()) + " min_cost_room=" +
                std::to_string(assoc.unmatched_candidate_min_cost[k]) +
                " min_cost_anyroom=" + std::to_string(best_any));
    }
    MapObject& added = global_.add(local_obj.class_label, local_obj.box);
    added.n_match = local_obj.n_match;
    added.n_skip = local_obj.n_skip;
    added.room_id = rooms_.label_at(plan_, footprint(local_obj.box).center);
  }

  consolidate_room(current_room);
  purge(global_, config_);

  window_active_frames_.clear();
  local_.objects = ObjectMap{};
  local_.anchor_pose = robot_pose;
  local_.has_anchor = true;
}

void Mapper::consolidate_room(int room_id) {
  if (room_id == 0) return;
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < global_.objects.size() && !merged; ++i) {
      if (global_.objects[i].room_id != room_id) continue;
      for (std::size_t j = i + 1; j < global_.objects.size(); ++j) {
        if (global_.objects[j].room_id != room_id) continue;
        const auto cost = association_cost(global_.objects[i],
                                           global_.objects[j], models_);
        if (cost && *cost < config_.tau_cost) {
          merge_objects(global_.objects[i], global_.objects[j]);
          global_.objects.erase(global_.objects.begin() +
                                static_cast<std::ptrdiff_t>(j));
          merged = true;
          break;
        }
      }
    }
  }
}

}  // namespace semloc
