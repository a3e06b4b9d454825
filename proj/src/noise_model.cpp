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

#include "semloc/noise_model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "semloc/polygon.hpp"

namespace semloc {

std::optional<int> match_to_gt(const Detection3D& prediction_world,
                               const std::vector<GroundTruthObject>& gt,
                               double delta) {
  const Eigen::Vector2d center = prediction_world.box.center.head<2>();

  const GroundTruthObject* best_by_iou = nullptr;
  const GroundTruthObject* best_by_dist = nullptr;
  double best_iou = 0.0;
  double best_dist = delta;
  for (const GroundTruthObject& g : gt) {
    if (g.class_label != prediction_world.class_label) continue;
    const double dist = (g.box.center.head<2>() - center).norm();
    if (dist >= delta) continue;
    const double iou = iou_box3(prediction_world.box, g.box);
    if (iou > best_iou) {
      best_iou = iou;
      best_by_iou = &g;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best_by_dist = &g;
    }
  }
  if (best_by_iou != nullptr) return best_by_iou->id;
  if (best_by_dist != nullptr) return best_by_dist->id;
  return std::nullopt;
}

MatchedSample make_matched_sample(const Detection3D& prediction_world,
                                  const GroundTruthObject& gt) {
  MatchedSample sample;
  sample.gt_id = gt.id;
  sample.class_label = gt.class_label;
  const Eigen::Vector2d world_offset =
      prediction_world.box.center.head<2>() - gt.box.center.head<2>();
  // Into the GT object's local ground frame.
  const Eigen::Matrix2d r2 = yaw_rotation2(box_yaw(gt.box.rotation));
  sample.offset = r2.transpose() * world_offset;
  return sample;
}

ClassNoiseModel fit_class_model(const std::vector<MatchedSample>& samples,
                                const std::string& class_label,
                                const NoiseModelConfig& config) {
  std::vector<const MatchedSample*> of_class;
  for (const MatchedSample& s : samples) {
    if (s.class_label == class_label) of_class.push_back(&s);
  }
  if (static_cast<int>(of_class.size()) < config.min_samples) {
    throw std::invalid_argument("fit_class_model: insufficient samples for " +
                                class_label);
  }

  // Occurrence histogram over square cells centered on the origin; the fit
  // runs on bin centers weighted by counts.
  const double h = config.histogram_cell;
  std::map<std::pair<long, long>, int> bins;
  for (const MatchedSample* s : of_class) {
    const long bx = std::lround(s->offset.x() / h);
    const long by = std::lround(s->offset.y() / h);
    ++bins[{bx, by}];
  }

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  double total = 0.0;
  for (const auto& [cell, count] : bins) {
    const Eigen::Vector2d center(cell.first * h, cell.second * h);
    mean += count * center;
    total += count;
  }
  mean /= total;

  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& [cell, count] : bins) {
    const Eigen::Vector2d center(cell.first * h, cell.second * h);
    const Eigen::Vector2d d = center - mean;
    cov += count * d * d.transpose();
  }
  cov /= total;
  cov += config.regularization * Eigen::Matrix2d::Identity();

  ClassNoiseModel model;
  model.class_label = class_label;
  model.mean = mean;
  model.covariance = cov;
  model.sample_count = static_cast<int>(of_class.size());
  model.peak_density = 1.0 / (2.0 * kPi * std::sqrt(cov.determinant()));
  return model;
}

ObjectGaussian instantiate(const ClassNoiseModel& model,
                           const MapObject& object) {
  assert(object.class_label == model.class_label);
  const Eigen::Matrix2d r2 = yaw_rotation2(box_yaw(object.box.rotation));
  const Eigen::Vector2d mean = r2 * model.mean + object.box.center.head<2>();
  const Eigen::Matrix2d cov = r2 * model.covariance * r2.transpose();
  return {object.id, object.class_label, mean, cov};
}

ProbabilityMapResult build_probability_map(
    const std::map<std::string, ClassNoiseModel>& models,
    const ObjectMap& map) {
  ProbabilityMapResult result;
  for (const MapObject& obj : map.objects) {
    const auto it = models.find(obj.class_label);
    if (it == models.end()) {
      result.warnings.push_back("no noise model for class '" + obj.class_label +
                                "', skipping object " + std::to_string(obj.id));
      continue;
    }
    result.map.gaussians.push_back(instantiate(it->second, obj));
  }
  return result;
}

}  // namespace semloc
