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

#include "semloc/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace semloc {

double ConvexPolygon::area() const {
  if (size < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const Eigen::Vector2d& p = pts[i];
    const Eigen::Vector2d& q = pts[(i + 1) % size];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(twice);
}

ConvexPolygon to_polygon(const Footprint2& fp) {
  ConvexPolygon poly;
  for (const Eigen::Vector2d& c : fp.corners()) poly.push(c);
  return poly;
}

namespace {

inline double edge_side(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& p) {
  return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
}

inline Eigen::Vector2d segment_line_intersection(const Eigen::Vector2d& p,
                                                 const Eigen::Vector2d& q,
                                                 const Eigen::Vector2d& a,
                                                 const Eigen::Vector2d& b) {
  const double d1 = edge_side(a, b, p);
  const double d2 = edge_side(a, b, q);
  const double t = d1 / (d1 - d2);
  return p + t * (q - p);
}

}  // namespace

ConvexPolygon clip_convex(const ConvexPolygon& subject,
                          const ConvexPolygon& clip) {
  ConvexPolygon output = subject;
  for (std::size_t e = 0; e < clip.size && output.size > 0; ++e) {
    const Eigen::Vector2d& a = clip.pts[e];
    const Eigen::Vector2d& b = clip.pts[(e + 1) % clip.size];

    ConvexPolygon input = output;
    output.size = 0;
    for (std::size_t i = 0; i < input.size; ++i) {
      const Eigen::Vector2d& cur = input.pts[i];
      const Eigen::Vector2d& prev = input.pts[(i + input.size - 1) % input.size];
      const bool cur_in = edge_side(a, b, cur) >= 0.0;
      const bool prev_in = edge_side(a, b, prev) >= 0.0;
      if (cur_in) {
        if (!prev_in) {
          output.push(segment_line_intersection(prev, cur, a, b));
        }
        output.push(cur);
      } else if (prev_in) {
        output.push(segment_line_intersection(prev, cur, a, b));
      }
    }
  }
  return output;
}

double intersection_area(const Footprint2& a, const Footprint2& b) {
  return clip_convex(to_polygon(a), to_polygon(b)).area();
}

double iou_footprint(const Footprint2& a, const Footprint2& b) {
  // Bounding circles: farther apart than the radii sum means disjoint.
  const double r = a.extents.norm() + b.extents.norm();
  if ((a.center - b.center).squaredNorm() > r * r) return 0.0;
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou_box3(const OrientedBox3& a, const OrientedBox3& b) {
  const auto [a_lo, a_hi] = vertical_interval(a);
  const auto [b_lo, b_hi] = vertical_interval(b);
  const double dz = std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
  if (dz <= 0.0) return 0.0;
  const double inter = intersection_area(footprint(a), footprint(b)) * dz;
  const double uni = a.volume() + b.volume() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace semloc
