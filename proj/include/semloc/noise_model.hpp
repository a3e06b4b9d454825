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

#ifndef SEMLOC_NOISE_MODEL_HPP_
#define SEMLOC_NOISE_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semloc/detections.hpp"
#include "semloc/object_map.hpp"
#include "semloc/probability_map.hpp"

namespace semloc {

// Center offset of a matched prediction, expressed in the ground frame of
// its ground-truth object.
struct MatchedSample {
  int gt_id = 0;
  std::string class_label;
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
};

// Per-class detection-noise Gaussian fitted from matched predictions.
struct ClassNoiseModel {
  std::string class_label;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();
  int sample_count = 0;
  double peak_density = 0.0;
};

struct NoiseModelConfig {
  double match_distance = 1.0;  // delta: max 2D center distance to a GT
  double histogram_cell = 0.05;
  int min_samples = 10;
  double regularization = 1e-6;  // added to the covariance diagonal
};

// Matches a world-frame prediction to a ground-truth object: same class,
// 2D center distance < delta; ties resolved by highest 3D IoU, then by
// nearest center when no candidate overlaps. nullopt discards the prediction.
std::optional<int> match_to_gt(const Detection3D& prediction_world,
                               const std::vector<GroundTruthObject>& gt,
                               double delta);

// Offset of a matched prediction in the GT object's local ground frame.
MatchedSample make_matched_sample(const Detection3D& prediction_world,
                                  const GroundTruthObject& gt);

// Fits the class Gaussian over a 5 cm occurrence histogram of the offsets.
// Throws std::invalid_argument when fewer than min_samples samples exist.
ClassNoiseModel fit_class_model(const std::vector<MatchedSample>& samples,
                                const std::string& class_label,
                                const NoiseModelConfig& config = {});

// Transplants a class model onto a map object: the mean is rotated into the
// world by the object's ground-plane rotation and shifted to its center, the
// covariance is rotated alike.
ObjectGaussian instantiate(const ClassNoiseModel& model,
                           const MapObject& object);

struct ProbabilityMapResult {
  ObjectProbabilityMap map;
  std::vector<std::string> warnings;  // objects skipped for missing models
};

ProbabilityMapResult build_probability_map(
    const std::map<std::string, ClassNoiseModel>& models, const ObjectMap& map);

}  // namespace semloc

#endif  // SEMLOC_NOISE_MODEL_HPP_
