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

#ifndef SEMLOC_SIMULATOR_HPP_
#define SEMLOC_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "semloc/detections.hpp"
#include "semloc/floor_plan.hpp"
#include "semloc/noise_model.hpp"
#include "semloc/room_map.hpp"
#include "semloc/streams.hpp"

namespace semloc {

struct PlacementFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimClassSpec {
  std::string name;
  Eigen::Vector3d dims{0.6, 0.8, 0.6};  // (W, H, L) meters
  double dim_jitter = 0.1;              // relative, applied at placement
};

// Per-class detector emulation rates.
struct DetectionRates {
  double p_detect = 1.0;
  double fp_rate = 0.0;  // expected false positives per frame
};

struct WorldSpec {
  int rooms_x = 2;
  int rooms_y = 1;
  double room_width = 6.0;    // interior, meters
  double room_depth = 5.0;
  double wall_thickness = 0.2;
  double door_width = 0.7;  // narrower than twice the erosion radius
  double resolution = 0.05;
  int n_objects = 10;
  std::vector<SimClassSpec> classes;  // empty -> default catalogue

  // Detector emulation.
  std::map<std::string, ClassNoiseModel> class_noise;  // empty -> sigma_center
  double sigma_center = 0.0;   // isotropic center noise when class_noise empty
  double dim_noise_rel = 0.0;  // per-axis relative dim noise std
  double yaw_noise = 0.0;      // additive yaw noise std, radians
  double z_noise = 0.0;
  DetectionRates rates;
  double max_range = 6.0;      // detections beyond are dropped
};

std::vector<SimClassSpec> default_class_catalogue();

struct SimWorld {
  FloorPlan plan;
  RoomMap rooms;
  std::vector<GroundTruthObject> gt_objects;
  std::map<std::string, ClassNoiseModel> class_noise;
  DetectionRates rates;
  double max_range = 6.0;
  double dim_noise_rel = 0.0;
  double yaw_noise = 0.0;
  double z_noise = 0.0;

  ObjectMap gt_object_map() const;
};

// Deterministic synthetic world: a grid of rooms joined by doors, objects
// placed collision-free against the walls.
SimWorld generate_world(std::uint64_t seed, const WorldSpec& spec);

// Forward-looking camera mounted on the robot; returns robot->camera.
Pose3 default_camera_extrinsics();
CameraModel default_camera_model();

// World->camera pose of the robot's camera at a planar pose.
Pose3 camera_pose_at(const Pose2& robot_pose, const Pose3& cam_in_robot);

// Emulated detector output for one frame, camera-frame boxes. An object is
// emitted when it is in the frustum, wall-visible, within range, and the
// per-class detection draw succeeds; centers are perturbed by the class
// noise in the object's ground frame.
std::vector<Detection3D> simulate_detections(const SimWorld& world,
                                             const Pose2& robot_pose,
                                             const CameraModel& cam,
                                             const Pose3& cam_in_robot,
                                             std::uint64_t seed);

struct SimTrajectory {
  std::vector<TimedPose> poses;  // strictly increasing timestamps
};

// Unicycle waypoint follower: rotate toward the target, then drive.
SimTrajectory waypoint_trajectory(const std::vector<Eigen::Vector2d>& waypoints,
                                  double speed, double turn_rate, double dt,
                                  const Pose2& start);

// Waypoints through every room center, left-to-right serpentine.
std::vector<Eigen::Vector2d> room_tour_waypoints(const SimWorld& world,
                                                 const WorldSpec& spec);

// Relative odometry with the same noise family the filter's motion model
// assumes. sigma = (m per m, m per m, rad per rad); deterministic per seed.
std::vector<SequenceEvent> corrupt_odometry(const SimTrajectory& traj,
                                            const Eigen::Vector3d& sigma,
                                            std::uint64_t seed);

// Full localization event stream: odometry every step, an observation every
// `obs_every` steps (sharing the step timestamp).
std::vector<SequenceEvent> build_sequence(const SimWorld& world,
                                          const SimTrajectory& traj,
                                          const CameraModel& cam,
                                          const Pose3& cam_in_robot,
                                          const Eigen::Vector3d& odom_sigma,
                                          int obs_every, std::uint64_t seed);

// Mapping stream: one posed detection frame per trajectory sample.
std::vector<DetectionFrame> build_mapping_stream(const SimWorld& world,
                                                 const SimTrajectory& traj,
                                                 const CameraModel& cam,
                                                 const Pose3& cam_in_robot,
                                                 std::uint64_t seed);

// Stable per-frame sub-seed derivation (splitmix-style).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace semloc

#endif  // SEMLOC_SIMULATOR_HPP_
