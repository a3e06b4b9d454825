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

#include "semloc/edt.hpp"

#include <cmath>
#include <cstdint>

namespace semloc {

namespace {

// Finite stand-in for +inf; squared cell distances stay far below this for
// any realistic grid, so envelope intersections remain well defined.
constexpr double kBig = 1e18;

// 1D squared distance transform via the lower envelope of parabolas
// (Felzenszwalb-Huttenlocher).
void dt_1d(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
           std::vector<double>& z, int n) {
  int k = 0;
  v[0] = 0;
  z[0] = -kBig;
  z[1] = kBig;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kBig;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

DistanceField euclidean_distance_transform(
    const std::vector<std::uint8_t>& feature, int rows, int cols,
    double resolution) {
  DistanceField field;
  field.rows = rows;
  field.cols = cols;
  field.resolution = resolution;
  field.distances.assign(static_cast<std::size_t>(rows) * cols, 0.0);

  std::vector<double> grid(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = feature[i] ? 0.0 : kBig;
  }

  const int n = std::max(rows, cols);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  // Columns first, then rows.
  for (int col = 0; col < cols; ++col) {
    for (int row = 0; row < rows; ++row) f[row] = grid[row * cols + col];
    dt_1d(f, d, v, z, rows);
    for (int row = 0; row < rows; ++row) grid[row * cols + col] = d[row];
  }
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) f[col] = grid[row * cols + col];
    dt_1d(f, d, v, z, cols);
    for (int col = 0; col < cols; ++col) {
      const double sq = d[col];
      field.distances[row * cols + col] =
          sq >= kBig ? std::numeric_limits<double>::infinity()
                     : resolution * std::sqrt(sq);
    }
  }
  return field;
}

}  // namespace semloc
