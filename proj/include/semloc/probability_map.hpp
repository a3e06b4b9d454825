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

#ifndef SEMLOC_PROBABILITY_MAP_HPP_
#define SEMLOC_PROBABILITY_MAP_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace semloc {

// A single map object's 2D Gaussian over predicted ground-plane centers.
struct ObjectGaussian {
  int object_id = 0;
  std::string class_label;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();

  // Cached at construction for fast density evaluation.
  Eigen::Matrix2d cov_inverse = Eigen::Matrix2d::Identity();
  double peak_density = 1.0 / (2.0 * 3.14159265358979323846);

  ObjectGaussian() = default;
  ObjectGaussian(int id, std::string cls, const Eigen::Vector2d& mu,
                 const Eigen::Matrix2d& sigma);

  double mahalanobis_squared(const Eigen::Vector2d& c) const {
    const Eigen::Vector2d d = c - mean;
    return d.dot(cov_inverse * d);
  }

  // Bivariate normal pdf at c (1/m^2).
  double density(const Eigen::Vector2d& c) const;

  // density / peak density = exp(-0.5 * mahalanobis^2), in [0, 1].
  double normalized_density(const Eigen::Vector2d& c) const;

  bool covariance_valid(double min_eigenvalue = 1e-8) const;
};

// The object probability map: one Gaussian per covered map object.
struct ObjectProbabilityMap {
  std::vector<ObjectGaussian> gaussians;

  std::vector<const ObjectGaussian*> of_class(const std::string& cls) const;
};

}  // namespace semloc

#endif  // SEMLOC_PROBABILITY_MAP_HPP_
