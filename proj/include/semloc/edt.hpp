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

#ifndef SEMLOC_EDT_HPP_
#define SEMLOC_EDT_HPP_

#include <cstdint>
#include <limits>
#include <vector>

namespace semloc {

// Dense 2D field of distances in meters, same shape as the source grid.
struct DistanceField {
  int rows = 0;
  int cols = 0;
  double resolution = 1.0;
  std::vector<double> distances;

  double at(int row, int col) const { return distances[row * cols + col]; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < rows && col >= 0 && col < cols;
  }
};

// Exact Euclidean distance transform (Felzenszwalb-Huttenlocher): distance
// from every cell center to the nearest feature cell center. Cells with
// `feature[r * cols + c] != 0` are features. Cells unreachable (no feature
// at all) hold +infinity.
DistanceField euclidean_distance_transform(const std::vector<std::uint8_t>& feature,
                                           int rows, int cols,
                                           double resolution);

}  // namespace semloc

#endif  // SEMLOC_EDT_HPP_
