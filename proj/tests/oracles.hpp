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

// Test-only reference implementations, kept independent of the library code
// paths they check.

#ifndef SEMLOC_TESTS_ORACLES_HPP_
#define SEMLOC_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "semloc/oriented_box.hpp"
#include "semloc/pose.hpp"

namespace semloc::oracles {

// Point-in-convex-polygon by winding sign, independent of the clipping code.
inline bool point_in_convex(const std::vector<Eigen::Vector2d>& poly,
                            const Eigen::Vector2d& p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    const double side =
        (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    if (side < 0.0) return false;
  }
  return true;
}

inline std::vector<Eigen::Vector2d> footprint_corners(const Footprint2& fp) {
  const auto corners = fp.corners();
  return {corners.begin(), corners.end()};
}

// Monte Carlo IoU over a jittered grid (stratified sampling) covering the
// joint bounding box. `samples` is rounded down to a square grid.
inline double mc_iou(const Footprint2& a, const Footprint2& b,
                     std::size_t samples, std::uint64_t seed) {
  const auto pa = footprint_corners(a);
  const auto pb = footprint_corners(b);

  Eigen::Vector2d lo = pa[0];
  Eigen::Vector2d hi = pa[0];
  for (const auto& p : pa) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  for (const auto& p : pb) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }

  const std::size_t side = static_cast<std::size_t>(std::sqrt(samples));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double dx = (hi.x() - lo.x()) / side;
  const double dy = (hi.y() - lo.y()) / side;

  std::size_t n_union = 0;
  std::size_t n_inter = 0;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      const Eigen::Vector2d p(lo.x() + (i + unit(rng)) * dx,
                              lo.y() + (j + unit(rng)) * dy);
      const bool in_a = point_in_convex(pa, p);
      const bool in_b = point_in_convex(pb, p);
      if (in_a || in_b) ++n_union;
      if (in_a && in_b) ++n_inter;
    }
  }
  if (n_union == 0) return 0.0;
  return static_cast<double>(n_inter) / static_cast<double>(n_union);
}

// Weighted chordal distance of a yaw angle to a set of yaw rotations.
inline double chordal_objective(double yaw, const std::vector<double>& yaws,
                                const std::vector<double>& weights) {
  double total = 0.0;
  for (std::size_t i = 0; i < yaws.size(); ++i) {
    const Eigen::Matrix3d diff =
        yaw_rotation(yaw) - yaw_rotation(yaws[i]);
    total += weights[i] * diff.squaredNorm();
  }
  return total;
}

// 1-D grid search (iteratively refined) for the yaw minimizing the weighted
// chordal distance.
inline double grid_search_yaw(const std::vector<double>& yaws,
                              const std::vector<double>& weights) {
  double lo = -kPi;
  double hi = kPi;
  double best = 0.0;
  for (int pass = 0; pass < 6; ++pass) {
    const int steps = 2000;
    double best_val = std::numeric_limits<double>::max();
    for (int i = 0; i <= steps; ++i) {
      const double yaw = lo + (hi - lo) * i / steps;
      const double val = chordal_objective(yaw, yaws, weights);
      if (val < best_val) {
        best_val = val;
        best = yaw;
      }
    }
    const double span = (hi - lo) / steps;
    lo = best - 2.0 * span;
    hi = best + 2.0 * span;
  }
  return normalize_angle(best);
}

// Exhaustive minimum-cost assignment (injections of the smaller side).
inline double brute_force_assignment_cost(const Eigen::MatrixXd& cost) {
  const bool transpose = cost.rows() > cost.cols();
  const Eigen::MatrixXd m = transpose ? cost.transpose() : cost;
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());

  std::vector<int> cols(k);
  std::iota(cols.begin(), cols.end(), 0);

  double best = std::numeric_limits<double>::max();
  // Permute columns; the first n entries pair with the rows.
  std::sort(cols.begin(), cols.end());
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += m(i, cols[i]);
    best = std::min(best, total);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

// Eq.-style homogeneous projection: K [R | t] X with explicit matrices.
inline Eigen::Vector3d homogeneous_projection(const Eigen::Matrix3d& k,
                                              const Eigen::Matrix3d& r,
                                              const Eigen::Vector3d& t,
                                              const Eigen::Vector3d& p) {
  Eigen::Matrix<double, 3, 4> rt;
  rt.block<3, 3>(0, 0) = r;
  rt.col(3) = t;
  Eigen::Vector4d hom;
  hom << p, 1.0;
  return k * (rt * hom);
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Quaterniond q =
      Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng))
          .normalized();
  return q.toRotationMatrix();
}

inline Footprint2 random_footprint(std::mt19937_64& rng, double center_span,
                                   double min_extent, double max_extent) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Footprint2 fp;
  fp.center = {center_span * (2.0 * unit(rng) - 1.0),
               center_span * (2.0 * unit(rng) - 1.0)};
  fp.extents = {min_extent + (max_extent - min_extent) * unit(rng),
                min_extent + (max_extent - min_extent) * unit(rng)};
  fp.yaw = kPi * (2.0 * unit(rng) - 1.0);
  return fp;
}

}  // namespace semloc::oracles

#endif  // SEMLOC_TESTS_ORACLES_HPP_
