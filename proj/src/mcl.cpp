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

#include "semloc/mcl.hpp"

#include <cmath>
#include <thread>

#include "semloc/io/log.hpp"

namespace semloc {

namespace {
// Noise floor fraction applied once the robot moves at all.
constexpr double kNoiseFloor = 0.1;
}  // namespace

void predict(std::vector<Particle>& particles, const Pose2& odom_delta,
             const Eigen::Vector3d& sigma_odom, std::mt19937_64& rng) {
  const double trans = odom_delta.translation().norm();
  const double rot = std::abs(odom_delta.theta);
  const bool moving = trans > 0.0 || rot > 0.0;
  if (!moving) return;

  const double std_xy_scale = std::max(trans, kNoiseFloor);
  const double std_theta_scale = std::max(rot, kNoiseFloor);
  const double sx = sigma_odom.x() * std_xy_scale;
  const double sy = sigma_odom.y() * std_xy_scale;
  const double st = sigma_odom.z() * std_theta_scale;

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Particle& p : particles) {
    const Pose2 noisy(odom_delta.x + sx * gauss(rng),
                      odom_delta.y + sy * gauss(rng),
                      odom_delta.theta + st * gauss(rng));
    p.pose = p.pose.compose(noisy);
  }
}

namespace {

void normalize(std::vector<Particle>& particles) {
  double sum = 0.0;
  for (const Particle& p : particles) sum += p.weight;
  if (sum <= 0.0) return;
  for (Particle& p : particles) p.weight /= sum;
}

}  // namespace

bool reweigh(std::vector<Particle>& particles,
             const std::vector<RobotFrameDetection>& detections,
             const MclConfig& config, const SensorMap& maps,
             const ClassEdt* edt, int jobs) {
  if (detections.empty()) return false;

  auto weigh_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      particles[i].weight *=
          weigh_frame(detections, particles[i].pose, config.sensor_model,
                      maps, edt, config.eta);
    }
  };

  if (jobs <= 1 || particles.size() < 256) {
    weigh_range(0, particles.size());
  } else {
    const std::size_t n = particles.size();
    const std::size_t chunk = (n + jobs - 1) / jobs;
    std::vector<std::thread> workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      workers.emplace_back(weigh_range, begin, std::min(begin + chunk, n));
    }
    for (std::thread& t : workers) t.join();
  }

  double sum = 0.0;
  for (const Particle& p : particles) sum += p.weight;
  if (sum <= 0.0 || !std::isfinite(sum)) {
    const double uniform = 1.0 / static_cast<double>(particles.size());
    for (Particle& p : particles) p.weight = uniform;
    return false;
  }
  for (Particle& p : particles) p.weight /= sum;
  return true;
}

double effective_sample_size(const std::vector<Particle>& particles) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const Particle& p : particles) {
    sum += p.weight;
    sum_sq += p.weight * p.weight;
  }
  if (sum_sq <= 0.0) return 0.0;
  return (sum * sum) / sum_sq;
}

bool resample(std::vector<Particle>& particles, double threshold,
              std::mt19937_64& rng) {
  const std::size_t n = particles.size();
  if (n == 0) return false;

  double sum = 0.0;
  for (const Particle& p : particles) sum += p.weight;
  if (sum <= 0.0 || !std::isfinite(sum)) {
    log_warn("resample: all particle weights are zero, resetting uniform");
    for (Particle& p : particles) p.weight = 1.0 / n;
    return false;
  }
  normalize(particles);

  if (effective_sample_size(particles) >= threshold * static_cast<double>(n)) {
    return false;
  }

  std::uniform_real_distribution<double> uniform(0.0, 1.0 / n);
  const double start = uniform(rng);
  std::vector<Particle> resampled;
  resampled.reserve(n);
  double cumulative = particles[0].weight;
  std::size_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = start + static_cast<double>(i) / n;
    while (cumulative < target && index + 1 < n) {
      ++index;
      cumulative += particles[index].weight;
    }
    resampled.push_back(particles[index]);
    resampled.back().weight = 1.0 / n;
  }
  particles = std::move(resampled);
  return true;
}

Pose2 estimate(const std::vector<Particle>& particles) {
  double sum_w = 0.0;
  double x = 0.0, y = 0.0, sin_t = 0.0, cos_t = 0.0;
  for (const Particle& p : particles) {
    sum_w += p.weight;
    x += p.weight * p.pose.x;
    y += p.weight * p.pose.y;
    sin_t += p.weight * std::sin(p.pose.theta);
    cos_t += p.weight * std::cos(p.pose.theta);
  }
  if (sum_w <= 0.0) return {};
  return {x / sum_w, y / sum_w, std::atan2(sin_t, cos_t)};
}

ParticleFilter::ParticleFilter(MclConfig config, const SensorMap& maps,
                               const ClassEdt* edt, std::uint64_t seed)
    : config_(config), maps_(&maps), edt_(edt), rng_(seed) {
  if (config_.n_particles < 1) {
    throw std::invalid_argument("ParticleFilter: n_particles must be >= 1");
  }
}

void ParticleFilter::init_uniform(const FloorPlan& plan) {
  std::vector<Eigen::Vector2d> free_cells;
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      if (plan.at(r, c) == CellState::kFree) {
        free_cells.push_back(plan.cell_center(r, c));
      }
    }
  }
  if (free_cells.empty()) {
    throw std::runtime_error("init_uniform: floor plan has no free space");
  }

  std::uniform_int_distribution<std::size_t> pick(0, free_cells.size() - 1);
  std::uniform_real_distribution<double> jitter(-0.5 * plan.resolution(),
                                                0.5 * plan.resolution());
  std::uniform_real_distribution<double> heading(-kPi, kPi);
  particles_.assign(config_.n_particles, Particle{});
  const double w = 1.0 / config_.n_particles;
  for (Particle& p : particles_) {
    const Eigen::Vector2d cell = free_cells[pick(rng_)];
    p.pose = Pose2(cell.x() + jitter(rng_), cell.y() + jitter(rng_),
                   heading(rng_));
    p.weight = w;
  }
}

void ParticleFilter::init_at(const Pose2& pose, const Eigen::Vector3d& spread) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  particles_.assign(config_.n_particles, Particle{});
  const double w = 1.0 / config_.n_particles;
  for (Particle& p : particles_) {
    p.pose = Pose2(pose.x + spread.x() * gauss(rng_),
                   pose.y + spread.y() * gauss(rng_),
                   pose.theta + spread.z() * gauss(rng_));
    p.weight = w;
  }
}

void ParticleFilter::on_odometry(const Pose2& delta) {
  predict(particles_, delta, config_.sigma_odom, rng_);
}

void ParticleFilter::on_observation(const Observation& obs, int jobs) {
  Observation filtered = obs;
  if (config_.min_confidence > 0.0) {
    std::erase_if(filtered.detections, [this](const Detection3D& d) {
      return d.confidence < config_.min_confidence;
    });
  }
  const auto detections = detections_in_robot_frame(filtered);
  if (detections.empty()) return;
  reweigh(particles_, detections, config_, *maps_, edt_, jobs);
  resample(particles_, config_.resample_threshold, rng_);
}

}  // namespace semloc
