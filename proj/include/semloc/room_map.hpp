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

#ifndef SEMLOC_ROOM_MAP_HPP_
#define SEMLOC_ROOM_MAP_HPP_

#include <vector>

#include "semloc/floor_plan.hpp"

namespace semloc {

// Per-cell room labels over a floor plan grid. 0 means no room.
struct RoomMap {
  int rows = 0;
  int cols = 0;
  int room_count = 0;
  std::vector<int> labels;

  int at(int row, int col) const { return labels[row * cols + col]; }

  // Room id at a world point; 0 outside the grid or on unlabeled cells.
  int label_at(const FloorPlan& plan, const Eigen::Vector2d& p) const;
};

struct RoomSegmentationConfig {
  double erosion_radius = 0.4;   // meters; cuts door openings
  double min_room_area = 1.0;    // m^2; smaller components are dropped
};

// Erodes free space, labels 4-connected components, drops small ones, and
// spreads the surviving labels back over all free cells by geodesic
// nearest-component assignment. Labels are renumbered 1..room_count in
// first-seen row-major order.
RoomMap segment_rooms(const FloorPlan& plan,
                      const RoomSegmentationConfig& config = {});

}  // namespace semloc

#endif  // SEMLOC_ROOM_MAP_HPP_
