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

#include "semloc/rotation_average.hpp"

#include <cassert>

namespace semloc {

std::optional<Eigen::Matrix3d> rotation_average(
    std::span<const Eigen::Matrix3d> rotations,
    std::span<const double> weights) {
  assert(!rotations.empty() && rotations.size() == weights.size());

  Eigen::Matrix3d mean = Eigen::Matrix3d::Zero();
  double total = 0.0;
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    mean += weights[i] * rotations[i];
    total += weights[i];
  }
  mean /= total;

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      mean, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() <= 1e-9) {
    return std::nullopt;
  }

  const Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  const double det = (u * v.transpose()).determinant();
  return u * Eigen::Vector3d(1.0, 1.0, det).asDiagonal() * v.transpose();
}

}  // namespace semloc
