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

#ifndef SEMLOC_ROTATION_AVERAGE_HPP_
#define SEMLOC_ROTATION_AVERAGE_HPP_

#include <optional>
#include <span>

#include <Eigen/Dense>

namespace semloc {

// Weighted chordal mean of rotations: arithmetic mean of the matrices
// projected back onto SO(3) via SVD, with the determinant corrected to +1.
// Returns nullopt when the mean matrix is rank-deficient (any singular value
// <= 1e-9), in which case no meaningful average exists.
std::optional<Eigen::Matrix3d> rotation_average(
    std::span<const Eigen::Matrix3d> rotations, std::span<const double> weights);

}  // namespace semloc

#endif  // SEMLOC_ROTATION_AVERAGE_HPP_
