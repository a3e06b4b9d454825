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

#include "semloc/room_map.hpp"

#include <deque>

#include "semloc/edt.hpp"

namespace semloc {

int RoomMap::label_at(const FloorPlan& plan, const Eigen::Vector2d& p) const {
  if (!plan.contains_world(p)) return 0;
  const Eigen::Vector2i cell = plan.world_to_cell(p);
  return at(cell.x(), cell.y());
}

RoomMap segment_rooms(const FloorPlan& plan,
                      const RoomSegmentationConfig& config) {
  if (config.erosion_radius < plan.resolution()) {
    throw std::invalid_argument(
        "segment_rooms: erosion radius below the grid resolution");
  }
  const int rows = plan.rows();
  const int cols = plan.cols();
  const std::size_t n = static_cast<std::size_t>(rows) * cols;

  RoomMap rooms;
  rooms.rows = rows;
  rooms.cols = cols;
  rooms.labels.assign(n, 0);

  // Erosion: keep free cells farther than erosion_radius from any non-free
  // cell (grid boundary counts as non-free).
  std::vector<std::uint8_t> non_free(n, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (plan.at(r, c) != CellState::kFree || r == 0 || c == 0 ||
          r == rows - 1 || c == cols - 1) {
        non_free[r * cols + c] = 1;
      }
    }
  }
  const DistanceField dist =
      euclidean_distance_transform(non_free, rows, cols, plan.resolution());

  std::vector<std::uint8_t> eroded(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    eroded[i] = !non_free[i] && dist.distances[i] > config.erosion_radius;
  }

  // 4-connected components of the eroded mask, row-major seed order.
  std::vector<int> comp(n, 0);
  std::vector<std::size_t> comp_area;
  int next_comp = 0;
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  std::deque<Eigen::Vector2i> queue;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!eroded[r * cols + c] || comp[r * cols + c] != 0) continue;
      const int id = ++next_comp;
      std::size_t area = 0;
      comp[r * cols + c] = id;
      queue.push_back({r, c});
      while (!queue.empty()) {
        const Eigen::Vector2i cell = queue.front();
        queue.pop_front();
        ++area;
        for (int k = 0; k < 4; ++k) {
          const int nr = cell.x() + dr[k];
          const int nc = cell.y() + dc[k];
          if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
          const std::size_t idx = static_cast<std::size_t>(nr) * cols + nc;
          if (eroded[idx] && comp[idx] == 0) {
            comp[idx] = id;
            queue.push_back({nr, nc});
          }
        }
      }
      comp_area.push_back(area);
    }
  }

  // Drop components below the minimum room area.
  const double cell_area = plan.resolution() * plan.resolution();
  std::vector<int> keep(next_comp + 1, 0);
  int room_count = 0;
  for (int id = 1; id <= next_comp; ++id) {
    if (comp_area[id - 1] * cell_area >= config.min_room_area) {
      keep[id] = ++room_count;
    }
  }
  rooms.room_count = room_count;
  if (room_count == 0) return rooms;

  // Re-dilation: multi-source BFS from surviving seeds across free cells,
  // assigning every free cell to the geodesically nearest room.
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      if (comp[idx] != 0 && keep[comp[idx]] != 0) {
        rooms.labels[idx] = keep[comp[idx]];
        queue.push_back({r, c});
      }
    }
  }
  while (!queue.empty()) {
    const Eigen::Vector2i cell = queue.front();
    queue.pop_front();
    const int label = rooms.labels[cell.x() * cols + cell.y()];
    for (int k = 0; k < 4; ++k) {
      const int nr = cell.x() + dr[k];
      const int nc = cell.y() + dc[k];
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      const std::size_t idx = static_cast<std::size_t>(nr) * cols + nc;
      if (plan.at(nr, nc) == CellState::kFree && rooms.labels[idx] == 0) {
        rooms.labels[idx] = label;
        queue.push_back({nr, nc});
      }
    }
  }
  return rooms;
}

}  // namespace semloc
