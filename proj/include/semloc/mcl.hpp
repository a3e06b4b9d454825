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

#ifndef SEMLOC_MCL_HPP_
#define SEMLOC_MCL_HPP_

#include <random>
#include <vector>

#include "semloc/floor_plan.hpp"
#include "semloc/pose.hpp"
#include "semloc/sensor_model.hpp"

namespace semloc {

struct Particle {
  Pose2 pose;
  double weight = 1.0;
};

struct MclConfig {
  int n_particles = 5000;
  Eigen::Vector3d sigma_odom{0.15, 0.15, 0.15};  // (m, m, rad)
  double eta = 0.3;                 // false-association weight
  double resample_threshold = 0.5;  // resample when N_eff < threshold * N
  SensorModelKind sensor_model = SensorModelKind::kObject;
  double min_confidence = 0.0;      // detections below are ignored
};

// Odometry prediction: composes `delta` (previous robot frame) onto each
// particle with per-axis Gaussian noise scaled by the step magnitude.
// A zero delta leaves the particles untouched.
void predict(std::vector<Particle>& particles, const Pose2& odom_delta,
             const Eigen::Vector3d& sigma_odom, std::mt19937_64& rng);

// Multiplies particle weights by the frame weight and renormalizes.
// All-zero weights reset to uniform (reported via the return value).
bool reweigh(std::vector<Particle>& particles,
             const std::vector<RobotFrameDetection>& detections,
             const MclConfig& config, const SensorMap& maps,
             const ClassEdt* edt, int jobs = 1);

double effective_sample_size(const std::vector<Particle>& particles);

// Low-variance systematic resampling when N_eff < threshold * N.
// Returns true when resampling happened.
bool resample(std::vector<Particle>& particles, double threshold,
              std::mt19937_64& rng);

// Weighted mean pose; theta by circular mean.
Pose2 estimate(const std::vector<Particle>& particles);

// The filter: owns particles and the RNG, runs the standard MCL loop.
class ParticleFilter {
 public:
  ParticleFilter(MclConfig config, const SensorMap& maps, const ClassEdt* edt,
                 std::uint64_t seed);

  // Global initialization: uniform over free cells, uniform heading.
  void init_uniform(const FloorPlan& plan);
  void init_at(const Pose2& pose, const Eigen::Vector3d& spread);

  void on_odometry(const Pose2& delta);
  void on_observation(const Observation& obs, int jobs = 1);

  Pose2 estimate_pose() const { return estimate(particles_); }
  double n_eff() const { return effective_sample_size(particles_); }
  const std::vector<Particle>& particles() const { return particles_; }

 private:
  MclConfig config_;
  const SensorMap* maps_;
  const ClassEdt* edt_;
  std::mt19937_64 rng_;
  std::vector<Particle> particles_;
};

}  // namespace semloc

#endif  // SEMLOC_MCL_HPP_
