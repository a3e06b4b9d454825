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

#include "semloc/probability_map.hpp"

#include <cmath>

#include "semloc/angles.hpp"

namespace semloc {

ObjectGaussian::ObjectGaussian(int id, std::string cls,
                               const Eigen::Vector2d& mu,
                               const Eigen::Matrix2d& sigma)
    : object_id(id), class_label(std::move(cls)), mean(mu), covariance(sigma) {
  cov_inverse = covariance.inverse();
  peak_density = 1.0 / (2.0 * kPi * std::sqrt(covariance.determinant()));
}

double ObjectGaussian::density(const Eigen::Vector2d& c) const {
  return peak_density * std::exp(-0.5 * mahalanobis_squared(c));
}

double ObjectGaussian::normalized_density(const Eigen::Vector2d& c) const {
  return std::exp(-0.5 * mahalanobis_squared(c));
}

bool ObjectGaussian::covariance_valid(double min_eigenvalue) const {
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(covariance);
  return solver.eigenvalues().minCoeff() > min_eigenvalue;
}

std::vector<const ObjectGaussian*> ObjectProbabilityMap::of_class(
    const std::string& cls) const {
  std::vector<const ObjectGaussian*> out;
  for (const ObjectGaussian& g : gaussians) {
    if (g.class_label == cls) out.push_back(&g);
  }
  return out;
}

}  // namespace semloc
