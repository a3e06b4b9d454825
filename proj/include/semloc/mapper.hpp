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

#ifndef SEMLOC_MAPPER_HPP_
#define SEMLOC_MAPPER_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semloc/detections.hpp"
#include "semloc/floor_plan.hpp"
#include "semloc/noise_model.hpp"
#include "semloc/object_map.hpp"
#include "semloc/room_map.hpp"

namespace semloc {

struct MapperConfig {
  double d_xy = 0.1;        // integration trigger: translation
  double d_theta = 0.03;    // integration trigger: rotation
  double tau_cost = 0.999;  // association cost acceptance threshold
  double tau_purge = 0.5;   // purge when n_match / n_skip drops below
  double delta = 1.0;       // noise-model match radius, carried for tooling
};

// Short-term map aggregating detections between integrations.
struct LocalMap {
  ObjectMap objects;
  Pose2 anchor_pose;
  bool has_anchor = false;
};

// Recomputes the active flag of every object: inside the camera frustum and
// not separated from the camera by a wall.
void update_active(ObjectMap& map, const Pose3& cam_pose,
                   const CameraModel& cam, const FloorPlan& plan);

// Association cost between a map object and a candidate of the same class:
// mean of the IoU cost and the center goodness cost. nullopt when the
// classes differ. Without a class noise model the IoU cost stands alone.
std::optional<double> association_cost(
    const MapObject& target, const MapObject& candidate,
    const std::map<std::string, ClassNoiseModel>& models);

struct AssociationResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (target, candidate)
  std::vector<std::size_t> unmatched_targets;
  std::vector<std::size_t> unmatched_candidates;
  // Per unmatched candidate, the minimum cost against any target. A value
  // below tau_cost means the candidate is explained by an already-claimed
  // target; spawning a second object there would duplicate it.
  std::vector<double> unmatched_candidate_min_cost;
};

// Hungarian assignment between targets and candidates; pairs whose cost is
// missing (class mismatch) or >= tau_cost are demoted to unmatched.
AssociationResult associate(const std::vector<MapObject>& targets,
                            const std::vector<MapObject>& candidates,
                            const std::map<std::string, ClassNoiseModel>& models,
                            double tau_cost);

// Merges `pred` into `target`: n_match-weighted average of center and dims,
// SVD rotation average, counters summed. A degenerate rotation mean keeps
// the target rotation.
void merge_objects(MapObject& target, const MapObject& pred);

// Incremental mapper around a local/global map pair.
class Mapper {
 public:
  Mapper(FloorPlan plan, RoomMap rooms,
         std::map<std::string, ClassNoiseModel> models, CameraModel cam,
         MapperConfig config);

  // Folds one frame of camera-frame detections into the local map and
  // triggers integration when the robot moved past the thresholds.
  void ingest_frame(const std::vector<Detection3D>& detections,
                    const Pose2& robot_pose, const Pose3& cam_pose);

  // Merges the local map into the global map (room-gated), purges, clears
  // the local map. Fires automatically from ingest_frame; public for tests
  // and for flushing at end of stream.
  void integrate(const Pose2& robot_pose);

  // Map hygiene inside one room: pairs of objects the association cost
  // declares the same instance are merged. Runs as part of integrate for
  // the room the robot is in.
  void consolidate_room(int room_id);

  const ObjectMap& global_map() const { return global_; }
  const LocalMap& local_map() const { return local_; }
  ObjectMap& mutable_global_map() { return global_; }

  const FloorPlan& plan() const { return plan_; }
  const RoomMap& rooms() const { return rooms_; }

 private:
  FloorPlan plan_;
  RoomMap rooms_;
  std::map<std::string, ClassNoiseModel> models_;
  CameraModel cam_;
  MapperConfig config_;

  LocalMap local_;
  ObjectMap global_;
  Pose3 last_cam_pose_;
  bool has_frame_ = false;
  // Frames since the last integration in which each global object was
  // visible; an object unmatched at integration accrues this as n_skip.
  std::map<int, int> window_active_frames_;
};

// Removes objects with n_skip > 0 and n_match / n_skip < tau_purge.
void purge(ObjectMap& map, const MapperConfig& config);

}  // namespace semloc

#endif  // SEMLOC_MAPPER_HPP_
