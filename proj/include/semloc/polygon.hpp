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

#ifndef SEMLOC_POLYGON_HPP_
#define SEMLOC_POLYGON_HPP_

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "semloc/oriented_box.hpp"

namespace semloc {

// Convex polygon with bounded vertex count, allocation-free. Clipping two
// quads yields at most 8 vertices; 16 leaves headroom for general convex
// inputs used in tests.
struct ConvexPolygon {
  static constexpr std::size_t kMaxVertices = 16;

  std::array<Eigen::Vector2d, kMaxVertices> pts;
  std::size_t size = 0;

  void push(const Eigen::Vector2d& p) { pts[size++] = p; }

  double area() const;
};

ConvexPolygon to_polygon(const Footprint2& fp);

// Sutherland-Hodgman clip of `subject` against convex `clip` (CCW).
ConvexPolygon clip_convex(const ConvexPolygon& subject,
                          const ConvexPolygon& clip);

double intersection_area(const Footprint2& a, const Footprint2& b);

// Ground-plane IoU of two footprints.
double iou_footprint(const Footprint2& a, const Footprint2& b);

// Yaw-decomposed 3D IoU: oriented footprint overlap times vertical interval
// overlap, over the union volume.
double iou_box3(const OrientedBox3& a, const OrientedBox3& b);

}  // namespace semloc

#endif  // SEMLOC_POLYGON_HPP_
